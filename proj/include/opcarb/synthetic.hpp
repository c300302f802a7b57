#pragma once

#include "opcarb/records.hpp"

#include <cstdint>
#include <vector>

namespace opcarb {

/// Parameters for the synthetic panel generator. Defaults mirror the shape of
/// the study panel: 56 regions, 21 years from 2000, both sectors.
struct SyntheticSpec {
    int regions = 56;
    int years = 21;
    int start_year = 2000;
    std::uint64_t seed = 20200521;
};

struct SyntheticPanel {
    std::vector<MacroRecord> macro;
    std::vector<EndUseRecord> enduse;
};

SyntheticPanel generate_panel(const SyntheticSpec& spec);

} // namespace opcarb
