#include "homebias/backtest.hpp"

#include "homebias/errors.hpp"

namespace homebias {

StrategyResult backtest_flat(std::span<const MatchRecord* const> matches, Side side, double stake)
{
    if (matches.empty())
        throw EmptySliceError("backtest: slice contains no matches");
    if (!(stake > 0.0))
        throw UsageError("backtest: stake must be positive");

    StrategyResult r;
    r.side = side;
    const Outcome winning = side == Side::Home ? Outcome::HomeWin : Outcome::AwayWin;
    for (const MatchRecord* m : matches) {
        require_valid(m->odds);
        ++r.bets;
        r.staked += stake;
        if (m->result == winning)
            r.returned += stake * (side == Side::Home ? m->odds.home : m->odds.away);
    }
    r.roi = (r.returned - r.staked) / r.staked;
    return r;
}

StrategyResult backtest_flat(const Dataset& ds, const SliceSpec& slice, Side side, double stake)
{
    const auto selected = slice.select(ds);
    if (selected.empty())
        throw EmptySliceError("backtest: slice '" + slice.label + "' contains no matches");
    return backtest_flat(std::span<const MatchRecord* const>(selected), side, stake);
}

std::vector<BacktestRow> backtest_table(const Dataset& ds)
{
    std::vector<BacktestRow> rows;
    for (const auto& s : canonical_slices())
        rows.push_back({&s, backtest_flat(ds, s, Side::Home), backtest_flat(ds, s, Side::Away)});
    return rows;
}

}  // namespace homebias
