#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hinfluence {

enum class Errc {
  DuplicateEdge,
  NonPositiveWeight,
  Disconnected,
  SelfLoop,
  UnknownNode,
  NonPositiveScale,
  FieldAsLeader,
  SolveFailure,
  KeyMismatch,
  InvalidNewGraph,
  ParseError,
  EmptyGraph,
  EmptyKeepSet,
  MissingNode,
  NodeSetMismatch,
  LabelMismatch,
  NotAFixedPoint,
  InvalidArgument,
  IoError,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hinfluence
