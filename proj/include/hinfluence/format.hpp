#pragma once

#include <string>

namespace hinfluence {

/// 12 significant digits, '.' separator, independent of the C locale.
std::string format_number(double value);

/// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);

/// Locale-independent parse of the whole string; false on trailing junk.
bool parse_number(const std::string& text, double& value);

}  // namespace hinfluence
