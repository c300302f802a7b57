#pragma once

#include "opcarb/decomposition.hpp"
#include "opcarb/records.hpp"

#include <map>
#include <string>
#include <vector>

namespace opcarb {

/// Decarbonization metrics for one window. dci is in intensity units
/// (kgCO2/household or kgCO2/m^2); dc and per-capita dc are kgCO2.
struct DecarbMetrics {
    PeriodWindow window;
    double dci = 0.0;
    double dc = 0.0;
    double per_capita_dc = 0.0;
    double efficiency = 0.0; // cumulative-to-date dc / cumulative-to-date emissions
};

struct PhaseShareReport {
    std::vector<PeriodWindow> stages;
    std::vector<double> shares; // same order; sums to 1 when total dc > 0
};

enum class ActivityKind {
    Households, // residential
    FloorSpace, // commercial
};

/// Intensity reduction attributable to beneficial drivers: the negated sum of
/// the strictly negative factor-level contributions. Never negative.
double decarbonization_intensity(const ContributionSet& cs);

/// DC = DCI x activity. The activity kind must match the sector (households
/// for residential, floor space for commercial).
double total_decarbonization(double dci, double activity, ActivityKind kind, Sector sector);

double per_capita_decarbonization(double dc, double population);

/// Cumulative decarbonization divided by cumulative operational emissions
/// over the same years.
double decarbonization_efficiency(double cumulative_dc, double cumulative_emissions);

/// Compound annual rate of intensity change, (cT/c0)^(1/years) - 1.
double annual_decline_rate(double c0, double cT, int years);

/// Shares of total decarbonization per stage. Stage windows bucket the annual
/// values by year, inclusive on both ends; every year must fall in exactly
/// one stage.
PhaseShareReport phase_shares(const std::vector<std::pair<int, double>>& annual_dc,
                              const std::vector<PeriodWindow>& stages);

/// Top-n regions by metric value, descending, ties broken by region id.
std::vector<std::pair<std::string, double>>
rank_regions(const std::map<std::string, double>& metric_values, std::size_t top_n);

/// Per-year metrics and cumulative totals for one region-sector chain.
/// Activity and population are taken at each window's end year; emissions
/// are recovered from intensity x activity at the same years.
struct CumulativeAssessment {
    std::vector<DecarbMetrics> per_year;
    double cumulative_dc = 0.0;
    double cumulative_emissions = 0.0;
    double efficiency = 0.0;
};

CumulativeAssessment cumulative_assessment(const ChainResult& chain,
                                           const std::vector<MacroRecord>& macro_series);

} // namespace opcarb
