#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slst {

enum class ErrorKind {
  InvalidInstance,
  InvalidRoot,
  NonPositiveWeight,
  Infeasible,
  NotATree,
  MissingTerminal,
  UnknownEdge,
  BoundTooSmall,
  ForeignArc,
  DelayExceeded,
  CapExceeded,
  TooLarge,
  BadEpsilon,
  Disconnected,
  UnsatisfiableParams,
  Parse,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInstance: return "invalid-instance";
    case ErrorKind::InvalidRoot: return "invalid-root";
    case ErrorKind::NonPositiveWeight: return "non-positive-weight";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::NotATree: return "not-a-tree";
    case ErrorKind::MissingTerminal: return "missing-terminal";
    case ErrorKind::UnknownEdge: return "unknown-edge";
    case ErrorKind::BoundTooSmall: return "bound-too-small";
    case ErrorKind::ForeignArc: return "foreign-arc";
    case ErrorKind::DelayExceeded: return "delay-exceeded";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::BadEpsilon: return "bad-epsilon";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::UnsatisfiableParams: return "unsatisfiable-params";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

// Single exception type for the whole library; `kind` keeps the failure
// machine-distinguishable and `vertices` names offending vertices where the
// message alone is awkward (unreachable terminals, missing terminals, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<int> vertices = {})
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        vertices_(std::move(vertices)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<int>& vertices() const { return vertices_; }

 private:
  ErrorKind kind_;
  std::vector<int> vertices_;
};

}  // namespace slst
