#include "hinfluence/error.hpp"

namespace hinfluence {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::Disconnected: return "Disconnected";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::NonPositiveScale: return "NonPositiveScale";
    case Errc::FieldAsLeader: return "FieldAsLeader";
    case Errc::SolveFailure: return "SolveFailure";
    case Errc::KeyMismatch: return "KeyMismatch";
    case Errc::InvalidNewGraph: return "InvalidNewGraph";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::EmptyKeepSet: return "EmptyKeepSet";
    case Errc::MissingNode: return "MissingNode";
    case Errc::NodeSetMismatch: return "NodeSetMismatch";
    case Errc::LabelMismatch: return "LabelMismatch";
    case Errc::NotAFixedPoint: return "NotAFixedPoint";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hinfluence
