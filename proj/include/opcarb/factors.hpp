#pragma once

#include "opcarb/enduse.hpp"
#include "opcarb/records.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace opcarb {

// Multiplicative identity of carbon intensity for one region-year-sector.
//
// Residential chain per end use j:  pr * gr * hr * er * s_j * k_j = C_j / H
// Commercial chain per end use j:   pc * gc * sc * ic * e_j * k_j = C_j / F
//
// The four sector-wide factors live in `common` in the order listed above.
// `activity` holds s_j (residential energy shares) or e_j (commercial energy
// per floor space); `emission_factor` holds k_j, undefined (nullopt) where
// the end use consumed no energy.
struct FactorVector {
    std::string region;
    int year = 0;
    Sector sector = Sector::Residential;

    std::array<double, 4> common{};
    std::vector<double> activity;
    std::vector<std::optional<double>> emission_factor;
};

/// Name of common-factor slot `i` for a sector: pr/gr/hr/er or pc/gc/sc/ic.
std::string_view common_factor_name(Sector sector, std::size_t i);

/// Name of the end-use-indexed activity factor: "s" (residential) or "e" (commercial).
std::string_view activity_factor_name(Sector sector);

/// Carbon intensity of one region-year-sector: total and per end use.
/// Units are kgCO2 per household (residential) or per m^2 (commercial).
struct IntensityPoint {
    std::string region;
    int year = 0;
    Sector sector = Sector::Residential;

    double total = 0.0;
    std::vector<double> per_enduse;
};

/// Builds the factor identity from raw aggregates. The end-use records must
/// cover the sector's end uses exactly once and share region/year with the
/// macro record. k_j is left undefined where E_j = 0.
FactorVector derive_factors(const MacroRecord& macro, const std::vector<EndUseRecord>& enduses);

/// Evaluates the factor chain. End uses with zero activity contribute zero;
/// an undefined k_j with nonzero activity is an error.
IntensityPoint intensity_from_factors(const FactorVector& fv);

/// Sum of end-use emissions for one region-year-sector (kgCO2).
double aggregate_emissions(const std::vector<EndUseRecord>& enduses);

/// Relative closure error of the identity against an observed intensity.
double identity_residual(const FactorVector& fv, double observed_c);

} // namespace opcarb
