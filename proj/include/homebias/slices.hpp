#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "homebias/dataset.hpp"

namespace homebias {

enum class Spectators { Any, With, Without };

/// Selection of matches by season range, round range and spectator status.
/// Tables and backtests share these so every analysis sees the same subset.
struct SliceSpec {
    std::string key;    // short selector used on the command line
    std::string label;  // row label in rendered tables
    int first_season = 0;
    int last_season = kClosedDoorsSeason;
    int first_round = 1;
    int last_round = kRoundsPerSeason;
    Spectators spectators = Spectators::Any;

    bool contains(const MatchRecord& m) const noexcept;
    std::vector<const MatchRecord*> select(const Dataset& ds) const;
};

/// The four comparison periods, in table order: prior seasons rounds 1-25,
/// prior seasons rounds 26-34, 2019/20 with spectators, 2019/20 without.
const std::array<SliceSpec, 4>& canonical_slices();

const SliceSpec& closed_doors_slice();

/// Looks up a canonical slice by key; throws UsageError on unknown keys.
const SliceSpec& slice_by_key(std::string_view key);

}  // namespace homebias
