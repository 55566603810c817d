#include "riskadj/errors.hpp"

namespace riskadj {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSpd: return "NotSpd";
    case ErrorCode::EqualConsecutiveMeans: return "EqualConsecutiveMeans";
    case ErrorCode::DegenerateNormalization: return "DegenerateNormalization";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::StationaryPointNotMax: return "StationaryPointNotMax";
    }
    return "Unknown";
}

} // namespace riskadj
