#pragma once

#include <stdexcept>
#include <string>

namespace holant {

// Every failure the library reports carries one of these kinds so the CLI can
// map it to an exit code without parsing messages.
enum class ErrorKind {
  // input validation
  MalformedInput,
  NonInvolutionTwin,
  DartMissingFromRotation,
  NonPlanarEmbedding,
  NotCubic,
  UnknownEdge,
  InfeasibleSize,
  DanglingPresent,
  PreconditionViolation,
  EdgeCapExceeded,
  WrongForm,
  NotDegenerate,
  InvalidAssignment,
  ZeroSubdiagonal,
  NormalizationZero,
  MixedExtension,
  NegativeRadicand,
  DivisionByZero,
  TripleCrossing,
  EigenvectorInput,
  ExceptionalGraph,
  ZeroFactor,
  InconsistentCase,
  HardSignature,
  UnknownVerb,
  // internal
  SingularSystem,
  NoApplicableCase,
  InternalInvariant,
};

const char* error_kind_name(ErrorKind kind);

// True for kinds that signal a broken internal invariant rather than bad input.
bool is_internal(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace holant
