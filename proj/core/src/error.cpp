#include "coulomb/error.hpp"

namespace coulomb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GeneratorMismatch: return "generator mismatch";
    case ErrorKind::InconsistentRelations: return "inconsistent relations";
    case ErrorKind::NonMovable: return "non-movable character";
    case ErrorKind::MalformedCharacter: return "malformed character";
    case ErrorKind::NonGenericDirection: return "non-generic direction";
    case ErrorKind::UnsupportedFactor: return "unsupported factor";
    case ErrorKind::WindowTooSmall: return "window too small";
    case ErrorKind::InvalidGeometry: return "invalid geometry";
    case ErrorKind::SingularChart: return "fixed points not isolated";
    case ErrorKind::EdgeWeightMismatch: return "edge weight mismatch";
    case ErrorKind::EulerCountMismatch: return "euler count mismatch";
    case ErrorKind::InexactDivision: return "inexact division";
    case ErrorKind::UnsupportedGeometry: return "unsupported geometry";
    case ErrorKind::InvalidStaircase: return "invalid staircase";
    case ErrorKind::HigherOrderPole: return "higher-order pole";
    case ErrorKind::NonGenericCollision: return "non-generic collision";
    case ErrorKind::UnknownStrategy: return "unknown strategy";
    case ErrorKind::IrregularLimit: return "irregular limit";
    case ErrorKind::AssemblyCheck: return "assembly check failed";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Cache: return "cache error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace coulomb
