#include "homebias/slices.hpp"

#include "homebias/errors.hpp"

namespace homebias {

bool SliceSpec::contains(const MatchRecord& m) const noexcept
{
    if (m.season_id < first_season || m.season_id > last_season)
        return false;
    if (m.round < first_round || m.round > last_round)
        return false;
    switch (spectators) {
    case Spectators::Any: return true;
    case Spectators::With: return !m.period.behind_closed_doors;
    case Spectators::Without: return m.period.behind_closed_doors;
    }
    return false;
}

std::vector<const MatchRecord*> SliceSpec::select(const Dataset& ds) const
{
    std::vector<const MatchRecord*> out;
    for (const auto& m : ds.matches)
        if (contains(m))
            out.push_back(&m);
    return out;
}

const std::array<SliceSpec, 4>& canonical_slices()
{
    static const std::array<SliceSpec, 4> slices{{
        {"prior-early", "Seasons 2014/15-2018/19 Round 1-25", 0, kClosedDoorsSeason - 1, 1, kBreakRound,
         Spectators::Any},
        {"prior-late", "Seasons 2014/15-2018/19 Round 26-34", 0, kClosedDoorsSeason - 1, kBreakRound + 1,
         kRoundsPerSeason, Spectators::Any},
        {"spectators", "Season 2019/20 with spectators", kClosedDoorsSeason, kClosedDoorsSeason, 1,
         kRoundsPerSeason, Spectators::With},
        {"covid", "Season 2019/20 without spectators", kClosedDoorsSeason, kClosedDoorsSeason, 1,
         kRoundsPerSeason, Spectators::Without},
    }};
    return slices;
}

const SliceSpec& closed_doors_slice() { return canonical_slices()[3]; }

const SliceSpec& slice_by_key(std::string_view key)
{
    for (const auto& s : canonical_slices())
        if (s.key == key)
            return s;
    throw UsageError("unknown slice '" + std::string(key) +
                     "' (expected prior-early, prior-late, spectators or covid)");
}

}  // namespace homebias
