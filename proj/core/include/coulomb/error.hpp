#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coulomb {

enum class ErrorKind {
  GeneratorMismatch,
  InconsistentRelations,
  NonMovable,
  MalformedCharacter,
  NonGenericDirection,
  UnsupportedFactor,
  WindowTooSmall,
  InvalidGeometry,
  SingularChart,
  EdgeWeightMismatch,
  EulerCountMismatch,
  InexactDivision,
  UnsupportedGeometry,
  InvalidStaircase,
  HigherOrderPole,
  NonGenericCollision,
  UnknownStrategy,
  IrregularLimit,
  AssemblyCheck,
  Config,
  Cache,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace coulomb
