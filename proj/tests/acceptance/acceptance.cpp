// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
// Criteria 1-7 need the six vendored season files (2014/15 .. 2019/20) in the
// fixtures directory; criteria 8-10 are self-contained.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homebias/backtest.hpp"
#include "homebias/cli.hpp"
#include "homebias/errors.hpp"
#include "homebias/glm.hpp"
#include "homebias/ingest.hpp"
#include "homebias/market_math.hpp"
#include "homebias/models.hpp"
#include "homebias/report.hpp"
#include "synthetic.hpp"

#ifndef HOMEBIAS_FIXTURES_DIR
#define HOMEBIAS_FIXTURES_DIR "data"
#endif

using namespace homebias;
namespace fs = std::filesystem;

namespace {

class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        ++checks_;
        if (!ok)
            failures_.push_back(what);
    }
    void near(double got, double want, double tol, const std::string& what)
    {
        std::ostringstream s;
        s << what << ": got " << got << ", want " << want << " +/- " << tol;
        expect(std::isfinite(got) && std::abs(got - want) <= tol, s.str());
    }
    void fail(const std::string& what) { expect(false, what); }
    bool ok() const { return failures_.empty(); }
    std::size_t checks() const { return checks_; }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::size_t checks_ = 0;
    std::vector<std::string> failures_;
};

struct CriterionResult {
    int id;
    std::string title;
    Check check;
    double seconds = 0.0;
};

fs::path fixtures_dir()
{
    if (const char* env = std::getenv("HOMEBIAS_FIXTURES_DIR"); env && *env)
        return env;
    return HOMEBIAS_FIXTURES_DIR;
}

std::vector<fs::path> fixture_files(const fs::path& dir)
{
    std::vector<fs::path> out;
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        return out;
    for (const auto& e : fs::directory_iterator(dir, ec))
        if (e.is_regular_file() && e.path().extension() == ".csv")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// Reference values per slice, in canonical slice order.
constexpr std::array<std::size_t, 4> kMatches{1125, 405, 223, 83};
constexpr std::array<std::array<double, 3>, 4> kOutcomePct{{{44.98, 25.60, 29.42},
                                                            {49.63, 23.46, 26.91},
                                                            {43.05, 21.97, 34.98},
                                                            {32.53, 22.89, 44.58}}};
constexpr std::array<std::array<double, 3>, 4> kGoals{{{1.58, 1.24, 2.82},
                                                       {1.80, 1.26, 3.06},
                                                       {1.74, 1.51, 3.25},
                                                       {1.43, 1.66, 3.10}}};
constexpr std::array<double, 4> kMarginPct{5.09, 5.11, 4.83, 4.79};
constexpr std::array<std::array<double, 2>, 4> kRoiPct{{{-1.37, -11.69},
                                                        {6.24, -15.52},
                                                        {-6.64, 5.53},
                                                        {-33.84, 14.71}}};
// Closed-doors bins, top to bottom: matches, home wins, draws, away wins.
constexpr std::array<std::array<int, 4>, 11> kBins{{{3, 2, 1, 0},
                                                    {6, 3, 2, 1},
                                                    {7, 6, 1, 0},
                                                    {9, 5, 2, 2},
                                                    {12, 3, 4, 5},
                                                    {13, 4, 3, 6},
                                                    {10, 1, 4, 5},
                                                    {4, 1, 0, 3},
                                                    {9, 2, 1, 6},
                                                    {6, 0, 1, 5},
                                                    {4, 0, 0, 4}}};

struct RefCoef {
    const char* name;
    double estimate;
    const char* stars;
};

const std::vector<RefCoef> kMarginModel{
    {"intercept", 0.056, "***"}, {"abs_imp_prob_diff", -0.002, "***"}, {"season", -0.001, "***"}};
constexpr double kMarginR2 = 0.468;

const std::vector<RefCoef> kModel1{{"intercept", -2.207, "***"},       {"implied_probability", 4.530, "***"},
                                   {"away", -0.162, "**"},             {"betting_after_round_25", 0.032, ""},
                                   {"covid", -0.606, "**"},            {"away_x_covid", 1.136, "***"}};
constexpr double kModel1Aic = 4322.426;

const std::vector<RefCoef> kModel2{{"intercept", -2.207, "***"},       {"implied_probability", 4.530, "***"},
                                   {"away", -0.162, "**"},             {"betting_after_round_25", 0.076, ""},
                                   {"covid", -0.916, "**"},            {"away_x_covid", 1.143, "***"},
                                   {"round_after_25", -0.009, ""},     {"round_after_25_x_covid", 0.063, ""}};
constexpr double kModel2Aic = 4325.643;

void check_logit(Check& c, const FitResult& fit, const std::vector<RefCoef>& ref, double aic, const std::string& tag)
{
    c.expect(fit.converged, tag + " converged");
    c.expect(fit.observations == 3672, tag + " observations = 3672 (got " + std::to_string(fit.observations) + ")");
    for (const auto& r : ref) {
        const auto& got = fit.at(r.name);
        c.near(got.estimate, r.estimate, 0.10, tag + " " + r.name);
        c.expect(significance_stars(got.p_value) == r.stars,
                 tag + " " + r.name + " stars '" + significance_stars(got.p_value) + "' vs '" + r.stars + "'");
    }
    c.near(fit.aic.value_or(NAN), aic, 10.0, tag + " AIC");
}

// ---------------------------------------------------------------------------
// Criteria 1-7

void criterion_descriptive(Check& c, const Dataset& ds)
{
    const auto outcomes = outcome_table(ds);
    const auto goals = goals_table(ds);
    for (std::size_t s = 0; s < 4; ++s) {
        const auto& o = outcomes[s];
        c.expect(o.matches == kMatches[s], o.label + " matches " + std::to_string(o.matches) + " vs " +
                                               std::to_string(kMatches[s]));
        c.near(100 * o.home_share(), kOutcomePct[s][0], 0.5, o.label + " home %");
        c.near(100 * o.draw_share(), kOutcomePct[s][1], 0.5, o.label + " draw %");
        c.near(100 * o.away_share(), kOutcomePct[s][2], 0.5, o.label + " away %");
        c.near(goals[s].home, kGoals[s][0], 0.03, o.label + " home goals");
        c.near(goals[s].away, kGoals[s][1], 0.03, o.label + " away goals");
        c.near(goals[s].total, kGoals[s][2], 0.03, o.label + " total goals");
    }
}

void criterion_margins(Check& c, const Dataset& ds)
{
    const auto rows = margins_table(ds);
    for (std::size_t s = 0; s < 4; ++s)
        c.near(100 * rows[s].mean_margin, kMarginPct[s], 0.15, rows[s].label + " margin %");
}

void criterion_margin_model(Check& c, const Dataset& ds)
{
    const auto fit = fit_margin_model(ds);
    c.expect(fit.observations == 1836, "observations = 1836 (got " + std::to_string(fit.observations) + ")");
    for (const auto& r : kMarginModel) {
        const auto& got = fit.at(r.name);
        c.expect(std::signbit(got.estimate) == std::signbit(r.estimate), std::string(r.name) + " sign");
        c.near(got.estimate, r.estimate, 0.5 * std::abs(r.estimate), std::string(r.name) + " (50% relative)");
        c.expect(significance_stars(got.p_value) == r.stars, std::string(r.name) + " stars '" +
                                                                 significance_stars(got.p_value) + "'");
    }
    c.near(fit.r_squared.value_or(NAN), kMarginR2, 0.10, "R^2");
}

void criterion_model2(Check& c, const Dataset& ds)
{
    const auto fit = fit_bet_model(ds, 2);
    check_logit(c, fit, kModel2, kModel2Aic, "model 2");
    for (const char* name : {"round_after_25", "round_after_25_x_covid"}) {
        std::ostringstream s;
        s << name << " p = " << fit.at(name).p_value << " (want >= 0.10)";
        c.expect(fit.at(name).p_value >= 0.10, s.str());
    }
}

void criterion_backtests(Check& c, const Dataset& ds)
{
    const auto rows = backtest_table(ds);
    for (std::size_t s = 0; s < 4; ++s) {
        c.near(100 * rows[s].home.roi, kRoiPct[s][0], 2.0, rows[s].slice->label + " home ROI %");
        c.near(100 * rows[s].away.roi, kRoiPct[s][1], 2.0, rows[s].slice->label + " away ROI %");
    }
    const double away = 100 * rows[3].away.roi, home = 100 * rows[3].home.roi;
    c.expect(away >= 12.7 && away <= 16.7, "closed-doors away ROI " + std::to_string(away) + "% in [12.7, 16.7]");
    c.expect(home >= -35.8 && home <= -31.8, "closed-doors home ROI " + std::to_string(home) + "% in [-35.8, -31.8]");
}

void criterion_bins(Check& c, const Dataset& ds)
{
    const auto t = bins_table(ds);
    c.expect(t.bins.size() == kBins.size(), "11 bins");
    if (t.bins.size() != kBins.size())
        return;
    std::size_t sum_m = 0, sum_h = 0, sum_d = 0, sum_a = 0;
    std::size_t heavy_away = 0, heavy_away_won = 0, close_home = 0, close_away = 0;
    for (std::size_t k = 0; k < kBins.size(); ++k) {
        const auto& b = t.bins[k];
        c.near(static_cast<double>(b.matches), kBins[k][0], 1.0, "bin " + b.label() + " matches");
        sum_m += b.matches;
        sum_h += b.home_wins;
        sum_d += b.draws;
        sum_a += b.away_wins;
        if (b.upper <= -0.45 + 1e-9) {
            heavy_away += b.matches;
            heavy_away_won += b.away_wins;
        }
        if (b.upper <= 0.30 + 1e-9 && b.lower >= -0.30 - 1e-9) {
            close_home += b.home_wins;
            close_away += b.away_wins;
        }
    }
    c.expect(t.overflow.matches == 0, "no closed-doors match outside [-0.75, 0.90]");
    c.expect(sum_m == 83, "bin matches sum to 83 (got " + std::to_string(sum_m) + ")");
    c.expect(sum_h + sum_d + sum_a == 83, "outcome columns sum to 83");
    c.expect(heavy_away > 0 && heavy_away_won * 10 >= 9 * heavy_away,
             "heavy away favourites won " + std::to_string(heavy_away_won) + " of " + std::to_string(heavy_away));
    c.expect(close_away >= 2 * close_home, "close matches: " + std::to_string(close_away) + " away vs " +
                                               std::to_string(close_home) + " home wins");
}

// ---------------------------------------------------------------------------
// Criterion 8: GLM properties

double brute_ll(const DesignMatrix& d, const std::vector<double>& b)
{
    double ll = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j)
            eta += b[j] * d.x(i, j);
        const double p = 1.0 / (1.0 + std::exp(-eta));
        ll += d.response[i] == 1.0 ? std::log(p) : std::log1p(-p);
    }
    return ll;
}

void criterion_glm(Check& c)
{
    // Finite-difference gradient.
    {
        std::mt19937_64 rng(101);
        std::normal_distribution<double> z(0.0, 0.7);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto d = testing::simulate_logistic({0.3, -0.8, 0.5, 1.1}, 80, 500 + trial);
            std::vector<double> beta(4);
            for (auto& b : beta)
                b = z(rng);
            const auto g = logistic_score(d.x, d.response, beta);
            for (std::size_t j = 0; j < 4; ++j) {
                auto up = beta, dn = beta;
                up[j] += 1e-5;
                dn[j] -= 1e-5;
                const double fd = (brute_ll(d, up) - brute_ll(d, dn)) / 2e-5;
                worst = std::max(worst, std::abs(fd - g[j]) / std::max(1.0, std::abs(g[j])));
            }
        }
        c.expect(worst <= 1e-6, "gradient vs finite differences, worst relative " + std::to_string(worst));
    }
    // Grid-search oracle on a two-parameter problem.
    {
        const auto d = testing::simulate_logistic({0.4, -1.1}, 150, 12);
        auto search = [&](double c0, double c1, double half, double step) {
            double best = -1e300;
            std::pair<double, double> arg{c0, c1};
            const int n = static_cast<int>(std::lround(2 * half / step));
            for (int a = 0; a <= n; ++a)
                for (int b = 0; b <= n; ++b) {
                    const double b0 = c0 - half + a * step, b1 = c1 - half + b * step;
                    const double ll = brute_ll(d, {b0, b1});
                    if (ll > best) {
                        best = ll;
                        arg = {b0, b1};
                    }
                }
            return arg;
        };
        const auto coarse = search(0.0, 0.0, 10.0, 0.05);
        const auto fine = search(coarse.first, coarse.second, 0.1, 1e-3);
        const auto fit = fit_logistic(d);
        c.expect(std::abs(fit.coefficients[0].estimate - fine.first) <= 1e-3 &&
                     std::abs(fit.coefficients[1].estimate - fine.second) <= 1e-3,
                 "IRLS optimum within grid resolution 1e-3 of the grid-search optimum");
    }
    // Parameter recovery and exact AIC identity.
    {
        const std::vector<double> truth{-0.5, 1.2, -0.8, 0.3, 0.6};
        const auto d = testing::simulate_logistic(truth, 50000, 20200516);
        const auto fit = fit_logistic(d);
        c.expect(fit.converged, "n = 50,000 fit converged");
        for (std::size_t j = 0; j < truth.size(); ++j) {
            const auto& k = fit.coefficients[j];
            c.expect(std::abs(k.estimate - truth[j]) < 3.0 * k.std_error, "recovery of " + k.name);
        }
        const double params = static_cast<double>(fit.coefficients.size());
        c.expect(*fit.aic == 2.0 * params - 2.0 * *fit.log_likelihood, "AIC = 2k - 2 logL exactly");
    }
    // OLS residual orthogonality.
    {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> z;
        const std::size_t n = 2000;
        DesignMatrix d;
        d.columns = {"intercept", "a", "b"};
        d.x = linalg::Matrix(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            d.x(i, 0) = 1.0;
            d.x(i, 1) = std::abs(z(rng));
            d.x(i, 2) = static_cast<double>(i % 6);
            d.response.push_back(0.056 - 0.002 * d.x(i, 1) - 0.001 * d.x(i, 2) + 0.002 * z(rng));
        }
        const auto beta = fit_ols(d).estimates();
        double worst = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double f = 0.0;
                for (std::size_t k = 0; k < 3; ++k)
                    f += d.x(i, k) * beta[k];
                s += d.x(i, j) * (d.response[i] - f);
            }
            worst = std::max(worst, std::abs(s));
        }
        c.expect(worst < 1e-10 * static_cast<double>(n), "OLS residual orthogonality");
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: market-math properties

void criterion_market(Check& c)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1.01, 25.0);
    std::size_t bad_sum = 0, bad_perm = 0, bad_order = 0;
    for (int i = 0; i < 10000; ++i) {
        const OddsTriple o{u(rng), u(rng), u(rng)};
        const auto p = demargin(o);
        if (!(std::abs(p.home + p.draw + p.away - 1.0) < 1e-12))
            ++bad_sum;
        std::array<double, 3> v{o.home, o.draw, o.away};
        const double m = margin(o);
        std::sort(v.begin(), v.end());
        do {
            if (margin({v[0], v[1], v[2]}) != m)
                ++bad_perm;
        } while (std::next_permutation(v.begin(), v.end()));
        const std::array<double, 3> odds{o.home, o.draw, o.away}, prob{p.home, p.draw, p.away};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (a != b && (odds[a] < odds[b]) != (prob[a] > prob[b]))
                    ++bad_order;
    }
    c.expect(bad_sum == 0, "sum to one within 1e-12 on 10,000 triples (" + std::to_string(bad_sum) + " bad)");
    c.expect(bad_perm == 0, "margin permutation invariance (" + std::to_string(bad_perm) + " bad)");
    c.expect(bad_order == 0, "order preservation (" + std::to_string(bad_order) + " bad)");
    c.expect(std::abs(margin({2.0, 4.0, 4.0})) < 1e-15 && std::abs(margin({3.0, 3.0, 3.0})) < 1e-15,
             "fair book has zero margin");
}

// ---------------------------------------------------------------------------
// Criterion 10: determinism through the command line

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion_determinism(Check& c, const std::vector<fs::path>& fixtures, std::string& source)
{
    const fs::path tmp = fs::temp_directory_path() / ("homebias-acceptance-" + std::to_string(std::random_device{}()));
    fs::create_directories(tmp);
    std::vector<std::string> inputs;
    if (!fixtures.empty()) {
        source = "vendored fixtures";
        for (const auto& f : fixtures)
            inputs.push_back(f.string());
    } else {
        source = "synthetic seasons; fixtures absent";
        for (const auto& s : testing::synthetic_six_seasons(2020)) {
            const auto p = tmp / ("season" + std::to_string(s.season_id) + ".csv");
            std::ofstream(p, std::ios::binary) << testing::synthetic_season_csv(s);
            inputs.push_back(p.string());
        }
    }
    std::ostringstream sink_out, sink_err;
    const auto ds = (tmp / "dataset.json").string();
    std::vector<std::string> ingest_args{"ingest", "--dataset", ds, "--provenance", (tmp / "prov.txt").string()};
    for (const auto& i : inputs) {
        ingest_args.push_back("--input");
        ingest_args.push_back(i);
    }
    const int rc = run_cli(ingest_args, sink_out, sink_err);
    c.expect(rc == 0, "ingest exit status " + std::to_string(rc) + ": " + sink_err.str());
    if (rc == 0) {
        for (const char* fmt : {"text", "delimited", "structured"}) {
            const auto a = tmp / (std::string("a.") + fmt), b = tmp / (std::string("b.") + fmt);
            const int ra = run_cli({"report", "--dataset", ds, "--format", fmt, "--out", a.string()}, sink_out, sink_err);
            const int rb = run_cli({"report", "--dataset", ds, "--format", fmt, "--out", b.string()}, sink_out, sink_err);
            c.expect(ra == 0 && rb == 0, std::string("report --format ") + fmt + " succeeded");
            const auto ta = slurp(a), tb = slurp(b);
            c.expect(!ta.empty() && ta == tb, std::string(fmt) + " reports byte-identical");
        }
    }
    std::error_code ec;
    fs::remove_all(tmp, ec);
}

}  // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    const fs::path dir = fixtures_dir();
    const auto files = fixture_files(dir);

    std::optional<Dataset> dataset;
    std::string data_problem;
    if (files.empty()) {
        data_problem = "season fixtures not found in " + dir.string();
    } else {
        try {
            std::vector<RawSeasonFile> raw;
            for (const auto& f : files)
                raw.push_back(load_season_file(f));
            dataset = ingest(raw);
        } catch (const std::exception& e) {
            data_problem = std::string("fixture ingestion failed: ") + e.what();
        }
    }

    std::vector<CriterionResult> results;
    auto run = [&](int id, std::string title, const std::function<void(Check&)>& body) {
        CriterionResult o{id, std::move(title), {}, 0.0};
        const auto t0 = clock::now();
        try {
            body(o.check);
        } catch (const std::exception& e) {
            o.check.fail(std::string("exception: ") + e.what());
        }
        o.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        results.push_back(std::move(o));
    };
    auto on_data = [&](void (*body)(Check&, const Dataset&)) {
        return [&, body](Check& c) {
            if (!dataset) {
                c.fail(data_problem);
                return;
            }
            body(c, *dataset);
        };
    };

    run(1, "descriptive tables: outcome shares +/-0.5pp, exact counts, goals +/-0.03", on_data(criterion_descriptive));
    run(2, "mean margins per period +/-0.15pp", on_data(criterion_margins));
    run(3, "margin regression: signs, stars, coefficients +/-50%, R^2 +/-0.10", on_data(criterion_margin_model));
    run(4, "bet-win logit model 1: coefficients +/-0.10, stars, AIC +/-10",
        on_data([](Check& c, const Dataset& ds) { check_logit(c, fit_bet_model(ds, 1), kModel1, kModel1Aic, "model 1"); }));
    run(5, "bet-win logit model 2: same tolerances, round terms insignificant", on_data(criterion_model2));
    run(6, "flat-stake ROI: eight cells +/-2pp, closed-doors bands", on_data(criterion_backtests));
    run(7, "closed-doors ImpProbDiff bins: counts +/-1, sums 83, headline checks", on_data(criterion_bins));
    run(8, "GLM properties: gradient, grid oracle, recovery, AIC, orthogonality", criterion_glm);
    run(9, "market-math properties on 10,000 random triples", criterion_market);
    std::string det_source;
    run(10, "determinism: two full report runs are byte-identical",
        [&](Check& c) { criterion_determinism(c, files, det_source); });
    if (!det_source.empty())
        results.back().title += " [" + det_source + "]";

    int failed = 0;
    for (const auto& r : results) {
        const bool ok = r.check.ok();
        failed += ok ? 0 : 1;
        std::printf("%s  criterion %2d  %s  (%zu checks, %.2fs)\n", ok ? "PASS" : "FAIL", r.id, r.title.c_str(),
                    r.check.checks(), r.seconds);
        const auto& fl = r.check.failures();
        for (std::size_t i = 0; i < fl.size() && i < 8; ++i)
            std::printf("        - %s\n", fl[i].c_str());
        if (fl.size() > 8)
            std::printf("        - ... %zu more\n", fl.size() - 8);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
