#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "homebias/dataset.hpp"
#include "homebias/models.hpp"
#include "homebias/slices.hpp"

namespace homebias {

struct StrategyResult {
    Side side = Side::Home;
    std::size_t bets = 0;
    double staked = 0.0;
    double returned = 0.0;
    double roi = 0.0;  // (returned - staked) / staked
};

/// Flat stake on `side` for every match in `slice`, settled at the
/// consolidated average odds. Throws EmptySliceError for empty slices.
StrategyResult backtest_flat(const Dataset& ds, const SliceSpec& slice, Side side, double stake = 1.0);

/// Same settlement rule over an explicit list of matches.
StrategyResult backtest_flat(std::span<const MatchRecord* const> matches, Side side, double stake = 1.0);

struct BacktestRow {
    const SliceSpec* slice = nullptr;
    StrategyResult home;
    StrategyResult away;
};

/// Home and away strategies for each canonical slice, in table order.
std::vector<BacktestRow> backtest_table(const Dataset& ds);

}  // namespace homebias
