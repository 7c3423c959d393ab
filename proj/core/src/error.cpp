#include "holant/error.hpp"

namespace holant {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NonInvolutionTwin: return "NonInvolutionTwin";
    case ErrorKind::DartMissingFromRotation: return "DartMissingFromRotation";
    case ErrorKind::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case ErrorKind::NotCubic: return "NotCubic";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::InfeasibleSize: return "InfeasibleSize";
    case ErrorKind::DanglingPresent: return "DanglingPresent";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::EdgeCapExceeded: return "EdgeCapExceeded";
    case ErrorKind::WrongForm: return "WrongForm";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::InvalidAssignment: return "InvalidAssignment";
    case ErrorKind::ZeroSubdiagonal: return "ZeroSubdiagonal";
    case ErrorKind::NormalizationZero: return "NormalizationZero";
    case ErrorKind::MixedExtension: return "MixedExtension";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TripleCrossing: return "TripleCrossing";
    case ErrorKind::EigenvectorInput: return "EigenvectorInput";
    case ErrorKind::ExceptionalGraph: return "ExceptionalGraph";
    case ErrorKind::ZeroFactor: return "ZeroFactor";
    case ErrorKind::InconsistentCase: return "InconsistentCase";
    case ErrorKind::HardSignature: return "HardSignature";
    case ErrorKind::UnknownVerb: return "UnknownVerb";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NoApplicableCase: return "NoApplicableCase";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

bool is_internal(ErrorKind kind) {
  return kind == ErrorKind::SingularSystem || kind == ErrorKind::NoApplicableCase ||
         kind == ErrorKind::InternalInvariant;
}

}  // namespace holant
