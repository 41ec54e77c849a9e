#include "homebias/models.hpp"

#include <algorithm>
#include <cmath>

#include "homebias/errors.hpp"
#include "homebias/market_math.hpp"

namespace homebias {

const char* side_name(Side s) noexcept { return s == Side::Home ? "home" : "away"; }

std::vector<BetObservation> build_bet_observations(const Dataset& ds)
{
    std::vector<BetObservation> out;
    out.reserve(2 * ds.matches.size());
    for (std::size_t i = 0; i < ds.matches.size(); ++i) {
        const auto& m = ds.matches[i];
        const ProbTriple probs = demargin(m.odds);
        BetObservation base;
        base.match_index = i;
        base.betting_after_round_25 = m.period.after_round_25 ? 1 : 0;
        base.covid = m.period.behind_closed_doors ? 1 : 0;
        base.round_after_25 = std::clamp(m.period.round_after_25, 0, kRoundsPerSeason - kBreakRound);

        BetObservation home = base;
        home.side = Side::Home;
        home.implied_probability = probs.home;
        home.away = 0;
        home.won = m.result == Outcome::HomeWin ? 1 : 0;

        BetObservation away = base;
        away.side = Side::Away;
        away.implied_probability = probs.away;
        away.away = 1;
        away.won = m.result == Outcome::AwayWin ? 1 : 0;

        out.push_back(home);
        out.push_back(away);
    }
    return out;
}

std::vector<double> bet_covariates(const BetObservation& o, int model_id)
{
    if (model_id != 1 && model_id != 2)
        throw UsageError("unknown model id " + std::to_string(model_id) + " (expected 1 or 2)");
    std::vector<double> row{1.0,
                            o.implied_probability,
                            static_cast<double>(o.away),
                            static_cast<double>(o.betting_after_round_25),
                            static_cast<double>(o.covid),
                            static_cast<double>(o.away * o.covid)};
    if (model_id == 2) {
        row.push_back(static_cast<double>(o.round_after_25));
        row.push_back(static_cast<double>(o.round_after_25 * o.covid));
    }
    return row;
}

DesignMatrix build_design(const std::vector<BetObservation>& observations, int model_id)
{
    DesignMatrix d;
    d.columns = {"intercept", "implied_probability", "away", "betting_after_round_25", "covid",
                 "away_x_covid"};
    if (model_id == 2) {
        d.columns.push_back("round_after_25");
        d.columns.push_back("round_after_25_x_covid");
    } else if (model_id != 1) {
        throw UsageError("unknown model id " + std::to_string(model_id) + " (expected 1 or 2)");
    }
    d.x = linalg::Matrix(observations.size(), d.columns.size());
    d.response.reserve(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto row = bet_covariates(observations[i], model_id);
        std::copy(row.begin(), row.end(), d.x.row(i).begin());
        d.response.push_back(static_cast<double>(observations[i].won));
    }
    return d;
}

std::vector<MarginObservation> build_margin_observations(const Dataset& ds)
{
    std::vector<MarginObservation> out;
    out.reserve(ds.matches.size());
    for (std::size_t i = 0; i < ds.matches.size(); ++i) {
        const auto& m = ds.matches[i];
        out.push_back({i, margin(m.odds), std::abs(imp_prob_diff(demargin(m.odds))), m.season_id});
    }
    return out;
}

DesignMatrix build_margin_design(const std::vector<MarginObservation>& observations)
{
    DesignMatrix d;
    d.columns = {"intercept", "abs_imp_prob_diff", "season"};
    d.x = linalg::Matrix(observations.size(), d.columns.size());
    for (std::size_t i = 0; i < observations.size(); ++i) {
        d.x(i, 0) = 1.0;
        d.x(i, 1) = observations[i].abs_imp_prob_diff;
        d.x(i, 2) = static_cast<double>(observations[i].season_index);
        d.response.push_back(observations[i].margin);
    }
    return d;
}

FitResult fit_bet_model(const Dataset& ds, int model_id)
{
    return fit_logistic(build_design(build_bet_observations(ds), model_id));
}

FitResult fit_margin_model(const Dataset& ds)
{
    return fit_ols(build_margin_design(build_margin_observations(ds)));
}

}  // namespace homebias
