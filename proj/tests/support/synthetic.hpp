#pragma once

// Test-only generator of season files in the football-data.co.uk layout.
// Scores follow a Poisson team-strength model; bookmaker prices are the
// model probabilities loaded with a margin and per-book noise.

#include <cstdint>
#include <string>
#include <vector>

#include "homebias/glm.hpp"

namespace homebias::testing {

struct SyntheticSeason {
    int season_id = 0;
    std::uint64_t seed = 1;
    bool four_digit_year = true;
    bool average_columns = true;
    bool modern_layout = true;  // "Avg"/"Time" columns instead of "BbAv"
    int books = 4;
    double margin = 0.05;
    double home_advantage = 0.25;
    // For the 2019/20 season: break after round 25, restart 2020-05-16,
    // one round-21 fixture on 2020-03-11 and one round-24 fixture on 2020-06-03.
    bool covid_schedule = false;
};

struct Fixture {
    int round = 0;
    int home = 0;
    int away = 0;
};

/// Double round robin for 18 teams; round r in [1, 34].
std::vector<Fixture> round_robin(int teams = 18);

std::string team_name(int index);

std::string synthetic_season_csv(const SyntheticSeason& options);

/// Six seasons 2014/15 .. 2019/20 with the closed-doors schedule on the last.
std::vector<SyntheticSeason> synthetic_six_seasons(std::uint64_t seed = 2020);

/// Logistic data: intercept plus `beta.size() - 1` covariates alternating
/// standard normal and Bernoulli(0.3) columns, response drawn from the model.
DesignMatrix simulate_logistic(const std::vector<double>& beta, std::size_t n, std::uint64_t seed);

}  // namespace homebias::testing
