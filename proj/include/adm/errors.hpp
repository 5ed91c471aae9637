#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adm {

enum class ErrorKind {
  EmptyGraph,
  DisconnectedGraph,
  NonpositiveLength,
  UnknownVertex,
  DuplicateVertex,
  UnknownEdge,
  InvalidGenus,
  ParameterOutOfRange,
  DegenerateDivisor,
  DegenerateWeighting,
  NotATree,
  OutsideExactClass,
  SingularSolve,
  ResidualGate,
  GenusMismatch,
  SmoothFamily,
  NonpositiveAdmissible,
  MissingData,
};

constexpr std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::NonpositiveLength: return "NonpositiveLength";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::InvalidGenus: return "InvalidGenus";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::DegenerateDivisor: return "DegenerateDivisor";
    case ErrorKind::DegenerateWeighting: return "DegenerateWeighting";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::OutsideExactClass: return "OutsideExactClass";
    case ErrorKind::SingularSolve: return "SingularSolve";
    case ErrorKind::ResidualGate: return "ResidualGate";
    case ErrorKind::GenusMismatch: return "GenusMismatch";
    case ErrorKind::SmoothFamily: return "SmoothFamily";
    case ErrorKind::NonpositiveAdmissible: return "NonpositiveAdmissible";
    case ErrorKind::MissingData: return "MissingData";
  }
  return "Unknown";
}

/// Domain error raised by every engine in the library. The kind is the
/// machine-readable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace adm
