#pragma once

#include "opcarb/enduse.hpp"

#include <string>

namespace opcarb {

/// Region-year socio-economic aggregates. All quantities strictly positive;
/// service GDP must not exceed total GDP.
struct MacroRecord {
    std::string region;
    int year = 0;
    double population = 0.0;        // persons
    double households = 0.0;        // count
    double gdp = 0.0;               // constant-currency units
    double service_gdp = 0.0;       // constant-currency units
    double hfc = 0.0;               // household final consumption, same basis
    double floor_space = 0.0;       // commercial floor space, m^2

    int source_row = 0;             // provenance for diagnostics, 0 = synthetic

    bool operator==(const MacroRecord& other) const {
        return region == other.region && year == other.year &&
               population == other.population && households == other.households &&
               gdp == other.gdp && service_gdp == other.service_gdp && hfc == other.hfc &&
               floor_space == other.floor_space;
    }
};

/// Region-year-sector-enduse energy and emissions. Energy and emissions are
/// nonnegative; an emission with zero energy is invalid.
struct EndUseRecord {
    std::string region;
    int year = 0;
    Sector sector = Sector::Residential;
    EndUse end_use = EndUse::SpaceHeating;
    double energy_mj = 0.0;
    double emissions_kgco2 = 0.0;

    int source_row = 0;

    bool operator==(const EndUseRecord& other) const {
        return region == other.region && year == other.year && sector == other.sector &&
               end_use == other.end_use && energy_mj == other.energy_mj &&
               emissions_kgco2 == other.emissions_kgco2;
    }
};

} // namespace opcarb
