#include "homebias/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "homebias/errors.hpp"
#include "homebias/market_math.hpp"

namespace homebias {

namespace {

using json = nlohmann::ordered_json;

double share(std::size_t part, std::size_t whole) noexcept
{
    return whole == 0 ? std::numeric_limits<double>::quiet_NaN()
                      : static_cast<double>(part) / static_cast<double>(whole);
}

template <class Row, class Fn>
std::vector<Row> per_slice(const Dataset& ds, Fn fn)
{
    std::vector<Row> out;
    for (const auto& s : canonical_slices()) {
        const auto sel = s.select(ds);
        out.push_back(fn(MatchSpan(sel), s.label));
    }
    return out;
}

// Shortest representation that round-trips.
std::string num(double v)
{
    if (std::isnan(v))
        return "NA";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v, int decimals)
{
    if (std::isnan(v))
        return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, s[0] == '-' ? 1 : 0);
    return s;
}

std::string thousands(const std::string& plain)
{
    const auto dot = plain.find('.');
    std::string int_part = plain.substr(0, dot);
    const std::string rest = dot == std::string::npos ? "" : plain.substr(dot);
    const bool neg = !int_part.empty() && int_part[0] == '-';
    if (neg)
        int_part.erase(0, 1);
    std::string grouped;
    for (std::size_t i = 0; i < int_part.size(); ++i) {
        if (i > 0 && (int_part.size() - i) % 3 == 0)
            grouped.push_back(',');
        grouped.push_back(int_part[i]);
    }
    return (neg ? "-" : "") + grouped + rest;
}

// Standard errors below 0.001 keep one significant digit, e.g. 0.0003.
std::string std_error_text(double se)
{
    if (!(se > 0.0) || !std::isfinite(se))
        return fixed(se, 3);
    const int decimals = std::max(3, static_cast<int>(-std::floor(std::log10(se))));
    return fixed(se, decimals);
}

/// Left-aligned first column, right-aligned others.
class TextTable {
public:
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void rule() { rows_.push_back({}); }

    std::string str() const
    {
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (width.size() <= c)
                    width.push_back(0);
                width[c] = std::max(width[c], r[c].size());
            }
        std::size_t total = 0;
        for (auto w : width)
            total += w + 2;
        std::ostringstream out;
        for (const auto& r : rows_) {
            if (r.empty()) {
                out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
                continue;
            }
            std::string line;
            for (std::size_t c = 0; c < r.size(); ++c) {
                const std::size_t pad = width[c] - r[c].size();
                if (c == 0)
                    line += r[c] + std::string(pad, ' ');
                else
                    line += "  " + std::string(pad, ' ') + r[c];
            }
            while (!line.empty() && line.back() == ' ')
                line.pop_back();
            out << line << '\n';
        }
        return out.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

std::string csv_line(const std::vector<std::string>& fields)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i)
        line += (i ? "," : "") + csv_field(fields[i]);
    return line + "\n";
}

json nan_safe(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

const char* display_term(const std::string& column)
{
    static const std::pair<const char*, const char*> terms[] = {
        {"implied_probability", "Implied probability"},
        {"away", "Away"},
        {"betting_after_round_25", "Betting after round 25"},
        {"covid", "COVID-19"},
        {"away_x_covid", "Away x COVID-19"},
        {"round_after_25", "Round after round 25"},
        {"round_after_25_x_covid", "Round after round 25 x COVID-19"},
        {"abs_imp_prob_diff", "Absolute difference in implied probabilities"},
        {"season", "Season"},
        {"intercept", "Constant"},
    };
    for (const auto& [k, v] : terms)
        if (column == k)
            return v;
    return nullptr;
}

std::string term_label(const std::string& column)
{
    const char* t = display_term(column);
    return t ? t : column;
}

// Terms in display order: intercept last.
std::vector<std::string> display_terms(const std::vector<NamedFit>& fits)
{
    std::vector<std::string> terms;
    bool has_intercept = false;
    for (const auto& nf : fits)
        for (const auto& c : nf.fit.coefficients) {
            if (c.name == "intercept") {
                has_intercept = true;
                continue;
            }
            if (std::find(terms.begin(), terms.end(), c.name) == terms.end())
                terms.push_back(c.name);
        }
    if (has_intercept)
        terms.push_back("intercept");
    return terms;
}

const Coefficient* find_coef(const FitResult& fit, const std::string& name)
{
    for (const auto& c : fit.coefficients)
        if (c.name == name)
            return &c;
    return nullptr;
}

json fit_json(const NamedFit& nf)
{
    const auto& fit = nf.fit;
    json j;
    j["model"] = nf.heading;
    j["kind"] = fit.kind == FitKind::Logistic ? "logistic" : "ols";
    j["observations"] = fit.observations;
    json coefs = json::array();
    for (const auto& c : fit.coefficients)
        coefs.push_back({{"term", c.name},
                         {"estimate", c.estimate},
                         {"std_error", nan_safe(c.std_error)},
                         {fit.kind == FitKind::Logistic ? "z" : "t", nan_safe(c.statistic)},
                         {"p_value", nan_safe(c.p_value)},
                         {"stars", significance_stars(c.p_value)}});
    j["coefficients"] = std::move(coefs);
    if (fit.log_likelihood)
        j["log_likelihood"] = *fit.log_likelihood;
    if (fit.aic)
        j["aic"] = *fit.aic;
    if (fit.r_squared)
        j["r_squared"] = *fit.r_squared;
    if (fit.residual_std_error)
        j["residual_std_error"] = *fit.residual_std_error;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    if (!fit.diagnostic.empty())
        j["diagnostic"] = fit.diagnostic;
    return j;
}

json outcomes_json(const std::vector<OutcomeRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"slice", r.label},
                       {"matches", r.matches},
                       {"home_wins", r.home_wins},
                       {"draws", r.draws},
                       {"away_wins", r.away_wins},
                       {"home_share", nan_safe(r.home_share())},
                       {"draw_share", nan_safe(r.draw_share())},
                       {"away_share", nan_safe(r.away_share())}});
    return arr;
}

json goals_json(const std::vector<GoalsRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"slice", r.label},
                       {"matches", r.matches},
                       {"home_goals", nan_safe(r.home)},
                       {"away_goals", nan_safe(r.away)},
                       {"total_goals", nan_safe(r.total)}});
    return arr;
}

json margins_json(const std::vector<MarginRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"slice", r.label}, {"matches", r.matches}, {"mean_margin", nan_safe(r.mean_margin)}});
    return arr;
}

json strategy_json(const StrategyResult& r)
{
    return {{"side", side_name(r.side)},
            {"bets", r.bets},
            {"staked", r.staked},
            {"returned", r.returned},
            {"roi", r.roi}};
}

json backtests_json(const std::vector<BacktestRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"slice", r.slice->label}, {"home", strategy_json(r.home)}, {"away", strategy_json(r.away)}});
    return arr;
}

json bin_json(const Bin& b)
{
    return {{"bin", b.label()},
            {"upper", b.upper},
            {"lower", b.lower},
            {"matches", b.matches},
            {"home_wins", b.home_wins},
            {"draws", b.draws},
            {"away_wins", b.away_wins}};
}

json bins_json(const BinTable& t)
{
    json arr = json::array();
    for (const auto& b : t.bins)
        arr.push_back(bin_json(b));
    json overflow = {{"matches", t.overflow.matches},
                     {"home_wins", t.overflow.home_wins},
                     {"draws", t.overflow.draws},
                     {"away_wins", t.overflow.away_wins}};
    return {{"slice", t.slice_label},
            {"total", t.total},
            {"mean_imp_prob_diff", nan_safe(t.mean_imp_prob_diff)},
            {"bins", std::move(arr)},
            {"overflow", std::move(overflow)}};
}

json curve_json(const std::vector<CurvePoint>& points)
{
    json arr = json::array();
    for (const auto& p : points)
        arr.push_back({{"side", side_name(p.side)},
                       {"period", period_name(p.period)},
                       {"implied", p.implied},
                       {"expected", p.expected}});
    return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------------------

double OutcomeRow::home_share() const noexcept { return share(home_wins, matches); }
double OutcomeRow::draw_share() const noexcept { return share(draws, matches); }
double OutcomeRow::away_share() const noexcept { return share(away_wins, matches); }

OutcomeRow outcome_row(MatchSpan matches, std::string label)
{
    OutcomeRow r;
    r.label = std::move(label);
    for (const MatchRecord* m : matches) {
        ++r.matches;
        switch (m->result) {
        case Outcome::HomeWin: ++r.home_wins; break;
        case Outcome::Draw: ++r.draws; break;
        case Outcome::AwayWin: ++r.away_wins; break;
        }
    }
    return r;
}

GoalsRow goals_row(MatchSpan matches, std::string label)
{
    GoalsRow r;
    r.label = std::move(label);
    long home = 0, away = 0;
    for (const MatchRecord* m : matches) {
        ++r.matches;
        home += m->home_goals;
        away += m->away_goals;
    }
    const double n = static_cast<double>(r.matches);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.home = r.matches ? static_cast<double>(home) / n : nan;
    r.away = r.matches ? static_cast<double>(away) / n : nan;
    r.total = r.matches ? static_cast<double>(home + away) / n : nan;
    return r;
}

MarginRow margin_row(MatchSpan matches, std::string label)
{
    MarginRow r;
    r.label = std::move(label);
    double sum = 0.0;
    for (const MatchRecord* m : matches) {
        ++r.matches;
        sum += margin(m->odds);
    }
    r.mean_margin = r.matches ? sum / static_cast<double>(r.matches) : std::numeric_limits<double>::quiet_NaN();
    return r;
}

std::vector<OutcomeRow> outcome_table(const Dataset& ds)
{
    return per_slice<OutcomeRow>(ds, [](MatchSpan s, const std::string& l) { return outcome_row(s, l); });
}

std::vector<GoalsRow> goals_table(const Dataset& ds)
{
    return per_slice<GoalsRow>(ds, [](MatchSpan s, const std::string& l) { return goals_row(s, l); });
}

std::vector<MarginRow> margins_table(const Dataset& ds)
{
    return per_slice<MarginRow>(ds, [](MatchSpan s, const std::string& l) { return margin_row(s, l); });
}

// ---------------------------------------------------------------------------

std::string Bin::label() const
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "[%5.2f;%6.2f%c", upper, lower, closed_below ? ']' : ')');
    return buf;
}

BinTable bins_table(MatchSpan matches, double width, std::string label)
{
    const double span = kBinTop - kBinBottom;
    if (!(width > 0.0) || !std::isfinite(width))
        throw UsageError("bin width must be positive");
    const double count = span / width;
    const auto n = static_cast<std::size_t>(std::llround(count));
    if (n == 0 || std::abs(count - static_cast<double>(n)) > 1e-9)
        throw UsageError("bin width " + num(width) + " does not divide the ImpProbDiff span [-0.75, 0.90]");

    auto edge = [&](std::size_t k) {
        if (k == n)
            return kBinBottom;
        return std::round((kBinTop - static_cast<double>(k) * width) * 1e12) / 1e12;
    };

    BinTable t;
    t.slice_label = std::move(label);
    for (std::size_t k = 0; k < n; ++k)
        t.bins.push_back({edge(k), edge(k + 1), k + 1 == n, 0, 0, 0, 0});
    t.overflow.upper = std::numeric_limits<double>::infinity();
    t.overflow.lower = -std::numeric_limits<double>::infinity();

    double sum = 0.0;
    for (const MatchRecord* m : matches) {
        const double raw = imp_prob_diff(demargin(m->odds));
        sum += raw;
        const double diff = std::round(raw * 1e12) / 1e12;
        ++t.total;
        Bin* target = &t.overflow;
        if (diff <= kBinTop && diff >= kBinBottom) {
            for (auto& b : t.bins) {
                if (diff <= b.upper && (diff > b.lower || (b.closed_below && diff >= b.lower))) {
                    target = &b;
                    break;
                }
            }
        }
        ++target->matches;
        switch (m->result) {
        case Outcome::HomeWin: ++target->home_wins; break;
        case Outcome::Draw: ++target->draws; break;
        case Outcome::AwayWin: ++target->away_wins; break;
        }
    }
    t.mean_imp_prob_diff = t.total ? sum / static_cast<double>(t.total) : std::numeric_limits<double>::quiet_NaN();
    return t;
}

BinTable bins_table(const Dataset& ds, const SliceSpec& slice, double width)
{
    const auto sel = slice.select(ds);
    return bins_table(MatchSpan(sel), width, slice.label);
}

// ---------------------------------------------------------------------------

const char* period_name(CurvePeriod p) noexcept
{
    return p == CurvePeriod::PriorSeasonEnd ? "prior-season-end" : "closed-doors";
}

std::vector<double> default_curve_grid()
{
    std::vector<double> grid;
    for (int i = 1; i <= 99; ++i)
        grid.push_back(i / 100.0);
    return grid;
}

std::vector<CurvePoint> curve_points(const FitResult& model1, std::span<const double> grid)
{
    if (model1.coefficients.size() != 6)
        throw UsageError("curve_points: expects a Model 1 fit (6 coefficients)");
    std::vector<CurvePoint> out;
    for (Side side : {Side::Home, Side::Away})
        for (CurvePeriod period : {CurvePeriod::PriorSeasonEnd, CurvePeriod::ClosedDoors})
            for (double p : grid) {
                BetObservation obs;
                obs.side = side;
                obs.implied_probability = p;
                obs.away = side == Side::Away ? 1 : 0;
                obs.betting_after_round_25 = 1;
                obs.covid = period == CurvePeriod::ClosedDoors ? 1 : 0;
                out.push_back({side, period, p, predict_win_prob(model1, bet_covariates(obs, 1))});
            }
    return out;
}

std::vector<CurvePoint> curve_match_points(const FitResult& model1, const Dataset& ds)
{
    if (model1.coefficients.size() != 6)
        throw UsageError("curve_match_points: expects a Model 1 fit (6 coefficients)");
    const auto& prior_late = canonical_slices()[1];
    const auto& closed = closed_doors_slice();
    std::vector<CurvePoint> out;
    for (const auto& obs : build_bet_observations(ds)) {
        const MatchRecord& m = ds.matches[obs.match_index];
        CurvePeriod period;
        if (prior_late.contains(m))
            period = CurvePeriod::PriorSeasonEnd;
        else if (closed.contains(m))
            period = CurvePeriod::ClosedDoors;
        else
            continue;
        out.push_back({obs.side, period, obs.implied_probability,
                       predict_win_prob(model1, bet_covariates(obs, 1))});
    }
    std::stable_sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
        if (a.side != b.side)
            return a.side < b.side;
        if (a.period != b.period)
            return a.period < b.period;
        return a.implied < b.implied;
    });
    return out;
}

// ---------------------------------------------------------------------------

Format parse_format(const std::string& name)
{
    if (name == "text")
        return Format::Text;
    if (name == "delimited")
        return Format::Delimited;
    if (name == "structured")
        return Format::Structured;
    throw UsageError("unknown output format '" + name + "' (expected text, delimited or structured)");
}

std::string format_percent(double fraction, int decimals)
{
    if (std::isnan(fraction))
        return "-";
    return fixed(100.0 * fraction, decimals) + "%";
}

std::string render_outcomes(const std::vector<OutcomeRow>& rows, Format f)
{
    if (f == Format::Structured)
        return dump(outcomes_json(rows));
    if (f == Format::Delimited) {
        std::string out = csv_line({"slice", "matches", "home_wins", "draws", "away_wins", "home_share",
                                    "draw_share", "away_share"});
        for (const auto& r : rows)
            out += csv_line({r.label, std::to_string(r.matches), std::to_string(r.home_wins),
                             std::to_string(r.draws), std::to_string(r.away_wins), num(r.home_share()),
                             num(r.draw_share()), num(r.away_share())});
        return out;
    }
    TextTable t;
    t.add({"", "Matches", "Home wins", "Draws", "Away wins"});
    t.rule();
    for (const auto& r : rows)
        t.add({r.label, std::to_string(r.matches), format_percent(r.home_share()),
               format_percent(r.draw_share()), format_percent(r.away_share())});
    return t.str();
}

std::string render_goals(const std::vector<GoalsRow>& rows, Format f)
{
    if (f == Format::Structured)
        return dump(goals_json(rows));
    if (f == Format::Delimited) {
        std::string out = csv_line({"slice", "matches", "home_goals", "away_goals", "total_goals"});
        for (const auto& r : rows)
            out += csv_line({r.label, std::to_string(r.matches), num(r.home), num(r.away), num(r.total)});
        return out;
    }
    TextTable t;
    t.add({"", "Home goals", "Away goals", "Total goals"});
    t.rule();
    for (const auto& r : rows)
        t.add({r.label, fixed(r.home, 2), fixed(r.away, 2), fixed(r.total, 2)});
    return t.str();
}

std::string render_margins(const std::vector<MarginRow>& rows, Format f)
{
    if (f == Format::Structured)
        return dump(margins_json(rows));
    if (f == Format::Delimited) {
        std::string out = csv_line({"slice", "matches", "mean_margin"});
        for (const auto& r : rows)
            out += csv_line({r.label, std::to_string(r.matches), num(r.mean_margin)});
        return out;
    }
    TextTable t;
    t.add({"", "Margins"});
    t.rule();
    for (const auto& r : rows)
        t.add({r.label, format_percent(r.mean_margin)});
    return t.str();
}

std::string render_fits(const std::vector<NamedFit>& fits, Format f)
{
    if (f == Format::Structured) {
        json arr = json::array();
        for (const auto& nf : fits)
            arr.push_back(fit_json(nf));
        return dump(arr);
    }
    if (f == Format::Delimited) {
        std::string out = csv_line({"model", "term", "estimate", "std_error", "statistic", "p_value", "stars"});
        for (const auto& nf : fits) {
            for (const auto& c : nf.fit.coefficients)
                out += csv_line({nf.heading, c.name, num(c.estimate), num(c.std_error), num(c.statistic),
                                 num(c.p_value), significance_stars(c.p_value)});
            out += csv_line({nf.heading, "observations", std::to_string(nf.fit.observations), "", "", "", ""});
            if (nf.fit.aic)
                out += csv_line({nf.heading, "aic", num(*nf.fit.aic), "", "", "", ""});
            if (nf.fit.log_likelihood)
                out += csv_line({nf.heading, "log_likelihood", num(*nf.fit.log_likelihood), "", "", "", ""});
            if (nf.fit.r_squared)
                out += csv_line({nf.heading, "r_squared", num(*nf.fit.r_squared), "", "", "", ""});
        }
        return out;
    }

    TextTable t;
    const bool all_logistic = std::all_of(fits.begin(), fits.end(),
                                          [](const NamedFit& nf) { return nf.fit.kind == FitKind::Logistic; });
    std::vector<std::string> head{all_logistic ? "Dependent variable: Won" : "Dependent variable"};
    for (const auto& nf : fits)
        head.push_back(nf.heading);
    t.add(head);
    t.rule();
    for (const auto& term : display_terms(fits)) {
        std::vector<std::string> est{term_label(term)};
        std::vector<std::string> se{""};
        for (const auto& nf : fits) {
            const Coefficient* c = find_coef(nf.fit, term);
            if (!c) {
                est.emplace_back("");
                se.emplace_back("");
                continue;
            }
            est.push_back(fixed(c->estimate, 3) + significance_stars(c->p_value));
            se.push_back("(" + (nf.fit.kind == FitKind::Ols ? std_error_text(c->std_error) : fixed(c->std_error, 3)) + ")");
        }
        t.add(est);
        t.add(se);
    }
    t.rule();
    std::vector<std::string> obs{"Observations"};
    for (const auto& nf : fits)
        obs.push_back(thousands(std::to_string(nf.fit.observations)));
    t.add(obs);
    if (std::any_of(fits.begin(), fits.end(), [](const NamedFit& nf) { return nf.fit.aic.has_value(); })) {
        std::vector<std::string> row{"Akaike Inf. Crit."};
        for (const auto& nf : fits)
            row.push_back(nf.fit.aic ? thousands(fixed(*nf.fit.aic, 3)) : "");
        t.add(row);
    }
    if (std::any_of(fits.begin(), fits.end(), [](const NamedFit& nf) { return nf.fit.r_squared.has_value(); })) {
        std::vector<std::string> row{"R2"};
        for (const auto& nf : fits)
            row.push_back(nf.fit.r_squared ? fixed(*nf.fit.r_squared, 3) : "");
        t.add(row);
    }
    t.rule();
    std::string out = t.str();
    out += "Note: *p<0.1; **p<0.05; ***p<0.01\n";
    for (const auto& nf : fits)
        if (!nf.fit.converged || !nf.fit.diagnostic.empty())
            out += "Warning (" + nf.heading + "): " + nf.fit.diagnostic + "\n";
    return out;
}

std::string render_backtests(const std::vector<BacktestRow>& rows, Format f)
{
    if (f == Format::Structured)
        return dump(backtests_json(rows));
    if (f == Format::Delimited) {
        std::string out = csv_line({"slice", "bets", "home_roi", "away_roi"});
        for (const auto& r : rows)
            out += csv_line({r.slice->label, std::to_string(r.home.bets), num(r.home.roi), num(r.away.roi)});
        return out;
    }
    TextTable t;
    t.add({"", "Betting on home win", "Betting on away win"});
    t.rule();
    for (const auto& r : rows)
        t.add({r.slice->label, format_percent(r.home.roi), format_percent(r.away.roi)});
    return t.str();
}

std::string render_strategy(const SliceSpec& slice, const StrategyResult& r, Format f)
{
    if (f == Format::Structured) {
        json j = strategy_json(r);
        j["slice"] = slice.label;
        return dump(j);
    }
    if (f == Format::Delimited)
        return csv_line({"slice", "side", "bets", "staked", "returned", "roi"}) +
               csv_line({slice.label, side_name(r.side), std::to_string(r.bets), num(r.staked), num(r.returned),
                         num(r.roi)});
    std::ostringstream out;
    out << slice.label << ", betting on " << side_name(r.side) << " win: " << r.bets << " bets, staked "
        << fixed(r.staked, 2) << ", returned " << fixed(r.returned, 2) << ", ROI " << format_percent(r.roi) << '\n';
    return out.str();
}

std::string render_bins(const BinTable& table, Format f)
{
    if (f == Format::Structured)
        return dump(bins_json(table));
    if (f == Format::Delimited) {
        std::string out = csv_line({"upper", "lower", "closed_below", "matches", "home_wins", "draws", "away_wins"});
        for (const auto& b : table.bins)
            out += csv_line({num(b.upper), num(b.lower), b.closed_below ? "1" : "0", std::to_string(b.matches),
                             std::to_string(b.home_wins), std::to_string(b.draws), std::to_string(b.away_wins)});
        out += csv_line({"overflow", "overflow", "", std::to_string(table.overflow.matches),
                         std::to_string(table.overflow.home_wins), std::to_string(table.overflow.draws),
                         std::to_string(table.overflow.away_wins)});
        return out;
    }
    TextTable t;
    t.add({"ImpProbDiff", "Matches", "Home wins", "Draws", "Away wins"});
    t.rule();
    for (const auto& b : table.bins)
        t.add({b.label(), std::to_string(b.matches), std::to_string(b.home_wins), std::to_string(b.draws),
               std::to_string(b.away_wins)});
    if (table.overflow.matches > 0)
        t.add({"outside range", std::to_string(table.overflow.matches), std::to_string(table.overflow.home_wins),
               std::to_string(table.overflow.draws), std::to_string(table.overflow.away_wins)});
    t.rule();
    t.add({"Total", std::to_string(table.total), "", "", ""});
    std::string out = t.str();
    out += table.slice_label + ": mean ImpProbDiff " + fixed(100.0 * table.mean_imp_prob_diff, 2) +
           " percentage points\n";
    return out;
}

std::string render_curve(const std::vector<CurvePoint>& points, Format f)
{
    if (f == Format::Structured)
        return dump(curve_json(points));
    // Plot data is delimited in both text and delimited modes.
    std::string out = csv_line({"side", "period", "implied", "expected"});
    for (const auto& p : points)
        out += csv_line({side_name(p.side), period_name(p.period), num(p.implied), num(p.expected)});
    return out;
}

std::string full_report(const Dataset& ds, Format f, double bin_width)
{
    const auto outcomes = outcome_table(ds);
    const auto goals = goals_table(ds);
    const auto margins = margins_table(ds);
    const std::vector<NamedFit> margin_fit{{"Margin", fit_margin_model(ds)}};
    const std::vector<NamedFit> bet_fits{{"Model 1", fit_bet_model(ds, 1)}, {"Model 2", fit_bet_model(ds, 2)}};
    const auto backtests = backtest_table(ds);
    const auto bins = bins_table(ds, closed_doors_slice(), bin_width);
    const auto curve = curve_points(bet_fits[0].fit, default_curve_grid());

    if (f == Format::Structured) {
        json root;
        root["format"] = "homebias-report";
        root["version"] = 1;
        root["matches"] = ds.matches.size();
        root["closed_doors_cutoff"] = format_date(ds.closed_doors_cutoff);
        root["outcomes"] = outcomes_json(outcomes);
        root["goals"] = goals_json(goals);
        root["margins"] = margins_json(margins);
        root["margin_model"] = fit_json(margin_fit[0]);
        json fits = json::array();
        for (const auto& nf : bet_fits)
            fits.push_back(fit_json(nf));
        root["bet_models"] = std::move(fits);
        root["backtests"] = backtests_json(backtests);
        root["bins"] = bins_json(bins);
        root["curve"] = curve_json(curve);
        return dump(root);
    }

    auto section = [&](const std::string& title, const std::string& body) {
        if (f == Format::Delimited)
            return "# " + title + "\n" + body + "\n";
        return title + "\n" + std::string(title.size(), '=') + "\n" + body + "\n";
    };
    std::string out;
    out += section("Match outcomes", render_outcomes(outcomes, f));
    out += section("Goals", render_goals(goals, f));
    out += section("Bookmaker margins", render_margins(margins, f));
    out += section("Margin regression", render_fits(margin_fit, f));
    out += section("Bet-win logistic models", render_fits(bet_fits, f));
    out += section("Flat-stake returns on investment", render_backtests(backtests, f));
    out += section("Outcomes by ImpProbDiff", render_bins(bins, f));
    out += section("Implied vs expected win probability (Model 1)", render_curve(curve, f));
    return out;
}

}  // namespace homebias
