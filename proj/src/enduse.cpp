#include "opcarb/enduse.hpp"

#include <array>

namespace opcarb {

namespace {

constexpr std::array<EndUse, kResidentialEndUseCount> kResidentialEndUses = {
    EndUse::SpaceHeating, EndUse::SpaceCooling, EndUse::WaterHeating,
    EndUse::Lighting,     EndUse::Cooking,      EndUse::AppliancesOthers,
};

constexpr std::array<EndUse, kCommercialEndUseCount> kCommercialEndUses = {
    EndUse::SpaceHeating,
    EndUse::SpaceCooling,
    EndUse::Lighting,
    EndUse::AppliancesOthers,
};

} // namespace

std::span<const EndUse> end_uses(Sector sector) {
    if (sector == Sector::Residential) {
        return kResidentialEndUses;
    }
    return kCommercialEndUses;
}

std::size_t end_use_count(Sector sector) {
    return end_uses(sector).size();
}

std::optional<std::size_t> end_use_index(Sector sector, EndUse eu) {
    const auto set = end_uses(sector);
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] == eu) {
            return i;
        }
    }
    return std::nullopt;
}

std::string_view sector_name(Sector sector) {
    return sector == Sector::Residential ? "residential" : "commercial";
}

std::string_view end_use_name(EndUse eu) {
    switch (eu) {
    case EndUse::SpaceHeating: return "space_heating";
    case EndUse::SpaceCooling: return "space_cooling";
    case EndUse::WaterHeating: return "water_heating";
    case EndUse::Lighting: return "lighting";
    case EndUse::Cooking: return "cooking";
    case EndUse::AppliancesOthers: return "appliances_others";
    }
    return "";
}

std::optional<Sector> parse_sector(std::string_view token) {
    if (token == "residential") {
        return Sector::Residential;
    }
    if (token == "commercial") {
        return Sector::Commercial;
    }
    return std::nullopt;
}

std::optional<EndUse> parse_end_use(std::string_view token) {
    for (EndUse eu : kResidentialEndUses) {
        if (token == end_use_name(eu)) {
            return eu;
        }
    }
    return std::nullopt;
}

} // namespace opcarb
