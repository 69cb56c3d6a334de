#include "hinfluence/format.hpp"

#include <array>
#include <charconv>

namespace hinfluence {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
  return {buf.data(), res.ptr};
}

std::string format_exact(double value) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), res.ptr};
}

bool parse_number(const std::string& text, double& value) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, value);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace hinfluence
