#ifndef CONDLAB_ERROR_HPP
#define CONDLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace condlab {

enum class ErrorCode {
  InvalidArgument,
  InvalidAlternative,
  SizeMismatch,
  NonAdjacentSwap,
  CapExceeded,
  OutOfDomain,
  NegativeProbability,
  TableMiss,
  ParityMismatch,
  PreconditionViolated,
  InfeasibleModel,
  Parse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidAlternative: return "InvalidAlternative";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NonAdjacentSwap: return "NonAdjacentSwap";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::TableMiss: return "TableMiss";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InfeasibleModel: return "InfeasibleModel";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace condlab

#endif  // CONDLAB_ERROR_HPP
