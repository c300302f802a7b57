#pragma once

#include <stdexcept>
#include <string>

namespace opcarb {

enum class ErrorCode {
    MissingEndUse,
    DuplicateEndUse,
    NonPositiveDenominator,
    MixedKeys,
    UndefinedFactor,
    NonPositiveInput,
    SectorMismatch,
    DegenerateState,
    InconsistentState,
    NonPositiveFactor,
    GapInSeries,
    FewerThanTwoYears,
    ActivitySectorMismatch,
    ZeroEmissions,
    ZeroTotalDecarbonization,
    OverlappingStages,
    UncoveredYears,
    YearMismatch,
    RegionNotCovered,
    WindowOutsideCoverage,
    UnreadablePath,
    UnwritablePath,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Domain error carrying a stable code alongside the human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace opcarb
