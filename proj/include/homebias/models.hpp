#pragma once

#include <cstddef>
#include <vector>

#include "homebias/dataset.hpp"
#include "homebias/glm.hpp"

namespace homebias {

enum class Side { Home, Away };

const char* side_name(Side s) noexcept;

/// One side bet on one match, as a row of the bet-win logit.
struct BetObservation {
    std::size_t match_index = 0;
    Side side = Side::Home;
    double implied_probability = 0.0;
    int away = 0;
    int betting_after_round_25 = 0;
    int covid = 0;
    int round_after_25 = 0;
    int won = 0;
};

/// Two observations per match (home row then away row). Draws lose both bets.
std::vector<BetObservation> build_bet_observations(const Dataset& ds);

/// Model 1: intercept, implied probability, away, betting after round 25,
/// covid, away x covid. Model 2 appends round after 25 and its covid
/// interaction. Throws UsageError for other ids.
DesignMatrix build_design(const std::vector<BetObservation>& observations, int model_id);

/// Covariate row for one hypothetical bet, in the column order of `model_id`.
std::vector<double> bet_covariates(const BetObservation& obs, int model_id);

struct MarginObservation {
    std::size_t match_index = 0;
    double margin = 0.0;
    double abs_imp_prob_diff = 0.0;
    int season_index = 0;
};

std::vector<MarginObservation> build_margin_observations(const Dataset& ds);

/// Margin regression design: intercept, |ImpProbDiff| (fraction), season index.
DesignMatrix build_margin_design(const std::vector<MarginObservation>& observations);

/// Convenience wrappers over the full dataset.
FitResult fit_bet_model(const Dataset& ds, int model_id);
FitResult fit_margin_model(const Dataset& ds);

}  // namespace homebias
