#include "hardy/error.hpp"

namespace hardy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Inadmissible: return "INADMISSIBLE";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::Singular: return "SINGULAR";
    case ErrorCode::IllConditioned: return "ILL_CONDITIONED";
    case ErrorCode::NotConverged: return "NOT_CONVERGED";
    case ErrorCode::NonConverged: return "NONCONVERGED";
    case ErrorCode::FitUnstable: return "FIT_UNSTABLE";
    case ErrorCode::SupportViolation: return "SUPPORT_VIOLATION";
    case ErrorCode::NegativeR: return "NEGATIVE_R";
    case ErrorCode::Truncation: return "TRUNCATION";
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::SingularParams: return "SINGULAR_PARAMS";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace hardy
