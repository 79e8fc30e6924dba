#include "so3kin/error.hpp"

namespace so3kin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotProperRotation: return "NotProperRotation";
    case ErrorCode::NotProjectable: return "NotProjectable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NonUniformSampling: return "NonUniformSampling";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyProfile: return "EmptyProfile";
    case ErrorCode::BadStep: return "BadStep";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace so3kin
