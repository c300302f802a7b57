#include "opcarb/synthetic.hpp"

#include "opcarb/enduse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace opcarb {

namespace {

std::string region_id(int index, int total) {
    int width = 2;
    for (int limit = 100; total > limit; limit *= 10) {
        ++width;
    }
    std::string digits = std::to_string(index);
    return "R" + std::string(width - digits.size(), '0') + digits;
}

} // namespace

SyntheticPanel generate_panel(const SyntheticSpec& spec) {
    SyntheticPanel panel;
    std::mt19937_64 rng(spec.seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    };

    for (int r = 0; r < spec.regions; ++r) {
        const std::string region = region_id(r, spec.regions);

        // Smooth multiplicative paths; rates are annual.
        const double population0 = log_uniform(1e6, 5e8);
        const double population_rate = uniform(-0.005, 0.02);
        const double household_size0 = uniform(2.0, 5.0);
        const double household_size_rate = uniform(-0.012, 0.0);
        const double gdp_per_capita0 = log_uniform(1e3, 5e4);
        const double gdp_per_capita_rate = uniform(0.0, 0.06);
        const double service_share0 = uniform(0.4, 0.7);
        const double service_share_rate = uniform(-0.004, 0.006);
        const double hfc_share0 = uniform(0.4, 0.7);
        const double hfc_share_rate = uniform(-0.004, 0.004);
        const double floor_per_capita0 = uniform(2.0, 20.0);
        const double floor_per_capita_rate = uniform(0.0, 0.03);

        const double energy_intensity0 = uniform(0.5, 5.0); // residential E per HFC
        const double energy_intensity_rate = uniform(-0.03, 0.005);

        const std::size_t res_n = kResidentialEndUseCount;
        const std::size_t com_n = kCommercialEndUseCount;
        std::vector<double> res_weight(res_n), res_weight_rate(res_n);
        std::vector<double> res_k(res_n), res_k_rate(res_n);
        for (std::size_t j = 0; j < res_n; ++j) {
            res_weight[j] = uniform(0.5, 2.0);
            res_weight_rate[j] = uniform(-0.02, 0.02);
            res_k[j] = uniform(0.03, 0.15);
            res_k_rate[j] = uniform(-0.03, 0.01);
        }
        std::vector<double> com_e(com_n), com_e_rate(com_n);
        std::vector<double> com_k(com_n), com_k_rate(com_n);
        for (std::size_t j = 0; j < com_n; ++j) {
            com_e[j] = uniform(10.0, 100.0); // MJ per m^2
            com_e_rate[j] = uniform(-0.02, 0.02);
            com_k[j] = uniform(0.03, 0.15);
            com_k_rate[j] = uniform(-0.03, 0.01);
        }

        for (int t = 0; t < spec.years; ++t) {
            const int year = spec.start_year + t;
            auto grow = [&](double base, double rate) { return base * std::pow(1.0 + rate, t); };

            MacroRecord macro;
            macro.region = region;
            macro.year = year;
            macro.population = grow(population0, population_rate);
            macro.households = macro.population / grow(household_size0, household_size_rate);
            macro.gdp = macro.population * grow(gdp_per_capita0, gdp_per_capita_rate);
            macro.service_gdp =
                macro.gdp * std::min(0.95, grow(service_share0, service_share_rate));
            macro.hfc = macro.gdp * std::min(0.95, grow(hfc_share0, hfc_share_rate));
            macro.floor_space =
                macro.population * grow(floor_per_capita0, floor_per_capita_rate);
            panel.macro.push_back(macro);

            const double residential_energy =
                macro.hfc * grow(energy_intensity0, energy_intensity_rate);
            double weight_sum = 0.0;
            std::vector<double> weights(res_n);
            for (std::size_t j = 0; j < res_n; ++j) {
                weights[j] = grow(res_weight[j], res_weight_rate[j]);
                weight_sum += weights[j];
            }
            for (std::size_t j = 0; j < res_n; ++j) {
                EndUseRecord rec;
                rec.region = region;
                rec.year = year;
                rec.sector = Sector::Residential;
                rec.end_use = end_uses(Sector::Residential)[j];
                rec.energy_mj = residential_energy * weights[j] / weight_sum;
                rec.emissions_kgco2 = rec.energy_mj * grow(res_k[j], res_k_rate[j]);
                panel.enduse.push_back(rec);
            }
            for (std::size_t j = 0; j < com_n; ++j) {
                EndUseRecord rec;
                rec.region = region;
                rec.year = year;
                rec.sector = Sector::Commercial;
                rec.end_use = end_uses(Sector::Commercial)[j];
                rec.energy_mj = macro.floor_space * grow(com_e[j], com_e_rate[j]);
                rec.emissions_kgco2 = rec.energy_mj * grow(com_k[j], com_k_rate[j]);
                panel.enduse.push_back(rec);
            }
        }
    }
    return panel;
}

} // namespace opcarb
