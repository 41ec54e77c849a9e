#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homebias/backtest.hpp"
#include "homebias/dataset.hpp"
#include "homebias/glm.hpp"
#include "homebias/models.hpp"
#include "homebias/slices.hpp"

namespace homebias {

using MatchSpan = std::span<const MatchRecord* const>;

// ---------------------------------------------------------------------------
// Descriptive tables

struct OutcomeRow {
    std::string label;
    std::size_t matches = 0;
    std::size_t home_wins = 0;
    std::size_t draws = 0;
    std::size_t away_wins = 0;

    /// Shares are NaN for an empty row.
    double home_share() const noexcept;
    double draw_share() const noexcept;
    double away_share() const noexcept;
};

struct GoalsRow {
    std::string label;
    std::size_t matches = 0;
    double home = 0.0;
    double away = 0.0;
    double total = 0.0;
};

struct MarginRow {
    std::string label;
    std::size_t matches = 0;
    double mean_margin = 0.0;
};

OutcomeRow outcome_row(MatchSpan matches, std::string label = {});
GoalsRow goals_row(MatchSpan matches, std::string label = {});
MarginRow margin_row(MatchSpan matches, std::string label = {});

/// One row per canonical slice, in table order.
std::vector<OutcomeRow> outcome_table(const Dataset& ds);
std::vector<GoalsRow> goals_table(const Dataset& ds);
std::vector<MarginRow> margins_table(const Dataset& ds);

// ---------------------------------------------------------------------------
// ImpProbDiff bins

inline constexpr double kBinTop = 0.90;
inline constexpr double kBinBottom = -0.75;
inline constexpr double kDefaultBinWidth = 0.15;

struct Bin {
    double upper = 0.0;  // included
    double lower = 0.0;  // excluded, except for the last bin
    bool closed_below = false;
    std::size_t matches = 0;
    std::size_t home_wins = 0;
    std::size_t draws = 0;
    std::size_t away_wins = 0;

    std::string label() const;
};

struct BinTable {
    std::string slice_label;
    std::vector<Bin> bins;  // descending from kBinTop
    Bin overflow;           // ImpProbDiff outside [kBinBottom, kBinTop]
    std::size_t total = 0;
    double mean_imp_prob_diff = 0.0;
};

/// Throws UsageError unless `width` is positive and divides the span.
BinTable bins_table(MatchSpan matches, double width = kDefaultBinWidth, std::string label = {});
BinTable bins_table(const Dataset& ds, const SliceSpec& slice = closed_doors_slice(),
                    double width = kDefaultBinWidth);

// ---------------------------------------------------------------------------
// Implied vs model-expected probabilities

enum class CurvePeriod { PriorSeasonEnd, ClosedDoors };

const char* period_name(CurvePeriod p) noexcept;

struct CurvePoint {
    Side side = Side::Home;
    CurvePeriod period = CurvePeriod::PriorSeasonEnd;
    double implied = 0.0;
    double expected = 0.0;
};

/// Uniform grid 0.01, 0.02, ..., 0.99.
std::vector<double> default_curve_grid();

/// Evaluates a Model 1 fit for every side x period x grid value. Both
/// periods are coded as betting after round 25; closed doors sets covid.
std::vector<CurvePoint> curve_points(const FitResult& model1, std::span<const double> grid);

/// Model 1 prediction for every bet in the prior-season-end and
/// closed-doors slices, using each match's own implied probability.
std::vector<CurvePoint> curve_match_points(const FitResult& model1, const Dataset& ds);

// ---------------------------------------------------------------------------
// Rendering

enum class Format { Text, Delimited, Structured };

/// Parses "text", "delimited" or "structured"; throws UsageError otherwise.
Format parse_format(const std::string& name);

std::string format_percent(double fraction, int decimals = 2);

/// A fitted model with the column heading it is rendered under.
struct NamedFit {
    std::string heading;
    FitResult fit;
};

std::string render_outcomes(const std::vector<OutcomeRow>& rows, Format f);
std::string render_goals(const std::vector<GoalsRow>& rows, Format f);
std::string render_margins(const std::vector<MarginRow>& rows, Format f);
std::string render_fits(const std::vector<NamedFit>& fits, Format f);
std::string render_backtests(const std::vector<BacktestRow>& rows, Format f);
std::string render_strategy(const SliceSpec& slice, const StrategyResult& r, Format f);
std::string render_bins(const BinTable& table, Format f);
std::string render_curve(const std::vector<CurvePoint>& points, Format f);

/// Every table, both fits, backtests, bins and the curve grid.
std::string full_report(const Dataset& ds, Format f, double bin_width = kDefaultBinWidth);

}  // namespace homebias
