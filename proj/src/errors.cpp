#include "opcarb/errors.hpp"

namespace opcarb {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::MissingEndUse: return "MissingEndUse";
    case ErrorCode::DuplicateEndUse: return "DuplicateEndUse";
    case ErrorCode::NonPositiveDenominator: return "NonPositiveDenominator";
    case ErrorCode::MixedKeys: return "MixedKeys";
    case ErrorCode::UndefinedFactor: return "UndefinedFactor";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::SectorMismatch: return "SectorMismatch";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::InconsistentState: return "InconsistentState";
    case ErrorCode::NonPositiveFactor: return "NonPositiveFactor";
    case ErrorCode::GapInSeries: return "GapInSeries";
    case ErrorCode::FewerThanTwoYears: return "FewerThanTwoYears";
    case ErrorCode::ActivitySectorMismatch: return "ActivitySectorMismatch";
    case ErrorCode::ZeroEmissions: return "ZeroEmissions";
    case ErrorCode::ZeroTotalDecarbonization: return "ZeroTotalDecarbonization";
    case ErrorCode::OverlappingStages: return "OverlappingStages";
    case ErrorCode::UncoveredYears: return "UncoveredYears";
    case ErrorCode::YearMismatch: return "YearMismatch";
    case ErrorCode::RegionNotCovered: return "RegionNotCovered";
    case ErrorCode::WindowOutsideCoverage: return "WindowOutsideCoverage";
    case ErrorCode::UnreadablePath: return "UnreadablePath";
    case ErrorCode::UnwritablePath: return "UnwritablePath";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace opcarb
