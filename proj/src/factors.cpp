#include "opcarb/factors.hpp"

#include "opcarb/errors.hpp"

#include <cmath>
#include <string>

namespace opcarb {

namespace {

constexpr std::array<std::string_view, 4> kResidentialCommon = {"pr", "gr", "hr", "er"};
constexpr std::array<std::string_view, 4> kCommercialCommon = {"pc", "gc", "sc", "ic"};

void require_positive_denominator(double value, std::string_view symbol) {
    if (!(value > 0.0)) {
        throw Error(ErrorCode::NonPositiveDenominator,
                    std::string(symbol) + " must be strictly positive, got " +
                        std::to_string(value));
    }
}

} // namespace

std::string_view common_factor_name(Sector sector, std::size_t i) {
    return sector == Sector::Residential ? kResidentialCommon.at(i) : kCommercialCommon.at(i);
}

std::string_view activity_factor_name(Sector sector) {
    return sector == Sector::Residential ? "s" : "e";
}

FactorVector derive_factors(const MacroRecord& macro, const std::vector<EndUseRecord>& enduses) {
    if (enduses.empty()) {
        throw Error(ErrorCode::MissingEndUse, "no end-use records given");
    }
    const Sector sector = enduses.front().sector;
    const std::size_t n = end_use_count(sector);

    // Slot every record into the sector's canonical end-use order so that all
    // downstream sums are independent of input ordering.
    std::vector<const EndUseRecord*> by_index(n, nullptr);
    for (const auto& rec : enduses) {
        if (rec.region != macro.region || rec.year != macro.year) {
            throw Error(ErrorCode::MixedKeys,
                        "end-use record " + rec.region + "/" + std::to_string(rec.year) +
                            " does not match macro record " + macro.region + "/" +
                            std::to_string(macro.year));
        }
        if (rec.sector != sector) {
            throw Error(ErrorCode::MixedKeys, "end-use records mix sectors");
        }
        const auto idx = end_use_index(sector, rec.end_use);
        if (!idx) {
            throw Error(ErrorCode::MixedKeys,
                        std::string(end_use_name(rec.end_use)) + " is not a " +
                            std::string(sector_name(sector)) + " end use");
        }
        if (by_index[*idx] != nullptr) {
            throw Error(ErrorCode::DuplicateEndUse,
                        std::string(end_use_name(rec.end_use)) + " appears more than once");
        }
        by_index[*idx] = &rec;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (by_index[i] == nullptr) {
            throw Error(ErrorCode::MissingEndUse,
                        std::string(end_use_name(end_uses(sector)[i])) + " is missing");
        }
    }

    require_positive_denominator(macro.population, "P");
    require_positive_denominator(macro.gdp, "GDP");

    FactorVector fv;
    fv.region = macro.region;
    fv.year = macro.year;
    fv.sector = sector;
    fv.activity.resize(n);
    fv.emission_factor.resize(n);

    if (sector == Sector::Residential) {
        require_positive_denominator(macro.households, "H");
        require_positive_denominator(macro.hfc, "HFC");
        double total_energy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            total_energy += by_index[i]->energy_mj;
        }
        require_positive_denominator(total_energy, "E");

        fv.common[0] = macro.population / macro.households; // pr
        fv.common[1] = macro.gdp / macro.population;        // gr
        fv.common[2] = macro.hfc / macro.gdp;               // hr
        fv.common[3] = total_energy / macro.hfc;            // er
        for (std::size_t i = 0; i < n; ++i) {
            fv.activity[i] = by_index[i]->energy_mj / total_energy;
        }
    } else {
        require_positive_denominator(macro.floor_space, "F");
        require_positive_denominator(macro.service_gdp, "Gs");

        fv.common[0] = macro.population / macro.floor_space; // pc
        fv.common[1] = macro.gdp / macro.population;         // gc
        fv.common[2] = macro.service_gdp / macro.gdp;        // sc
        fv.common[3] = macro.floor_space / macro.service_gdp; // ic
        for (std::size_t i = 0; i < n; ++i) {
            fv.activity[i] = by_index[i]->energy_mj / macro.floor_space;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const auto& rec = *by_index[i];
        if (rec.energy_mj > 0.0) {
            fv.emission_factor[i] = rec.emissions_kgco2 / rec.energy_mj;
        }
        // E_j = 0 leaves k_j undefined, not zero.
    }

    return fv;
}

IntensityPoint intensity_from_factors(const FactorVector& fv) {
    IntensityPoint point;
    point.region = fv.region;
    point.year = fv.year;
    point.sector = fv.sector;
    point.per_enduse.resize(fv.activity.size());

    const double prefix = fv.common[0] * fv.common[1] * fv.common[2] * fv.common[3];
    double total = 0.0;
    for (std::size_t j = 0; j < fv.activity.size(); ++j) {
        const double a = fv.activity[j];
        if (a == 0.0) {
            point.per_enduse[j] = 0.0;
            continue;
        }
        if (!fv.emission_factor[j]) {
            throw Error(ErrorCode::UndefinedFactor,
                        "k is undefined for " +
                            std::string(end_use_name(end_uses(fv.sector)[j])) +
                            " but its activity share is nonzero");
        }
        point.per_enduse[j] = prefix * a * *fv.emission_factor[j];
        total += point.per_enduse[j];
    }
    point.total = total;
    return point;
}

double aggregate_emissions(const std::vector<EndUseRecord>& enduses) {
    double total = 0.0;
    for (const auto& rec : enduses) {
        const auto& first = enduses.front();
        if (rec.region != first.region || rec.year != first.year || rec.sector != first.sector) {
            throw Error(ErrorCode::MixedKeys,
                        "records disagree on region/year/sector: " + first.region + "/" +
                            std::to_string(first.year) + " vs " + rec.region + "/" +
                            std::to_string(rec.year));
        }
        total += rec.emissions_kgco2;
    }
    return total;
}

double identity_residual(const FactorVector& fv, double observed_c) {
    if (!(observed_c > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "observed intensity must be positive");
    }
    const double reconstructed = intensity_from_factors(fv).total;
    return std::abs(reconstructed - observed_c) / observed_c;
}

} // namespace opcarb
