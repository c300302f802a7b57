#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace opcarb {

enum class Sector {
    Residential,
    Commercial,
};

// Canonical end-use order; per-sector arrays are always indexed in this order.
enum class EndUse {
    SpaceHeating,
    SpaceCooling,
    WaterHeating,
    Lighting,
    Cooking,
    AppliancesOthers,
};

inline constexpr std::size_t kResidentialEndUseCount = 6;
inline constexpr std::size_t kCommercialEndUseCount = 4;

/// End uses of a sector, in canonical order. Residential covers all six
/// categories; commercial has no water heating and no cooking.
std::span<const EndUse> end_uses(Sector sector);

std::size_t end_use_count(Sector sector);

/// Position of `eu` within `end_uses(sector)`, or nullopt if the sector
/// does not have that end use.
std::optional<std::size_t> end_use_index(Sector sector, EndUse eu);

std::string_view sector_name(Sector sector);
std::string_view end_use_name(EndUse eu);

std::optional<Sector> parse_sector(std::string_view token);
std::optional<EndUse> parse_end_use(std::string_view token);

} // namespace opcarb
