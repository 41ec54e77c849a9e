#include "homebias/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "homebias/backtest.hpp"
#include "homebias/dataset_io.hpp"
#include "homebias/errors.hpp"
#include "homebias/ingest.hpp"
#include "homebias/report.hpp"

namespace homebias {

namespace {

struct RunConfig {
    std::vector<std::string> inputs;
    std::vector<int> season_ids;
    std::string dataset;
    std::string provenance;
    std::string cutoff = format_date(kDefaultClosedDoorsCutoff);
    bool sequential = false;
    double bin_width = kDefaultBinWidth;
    std::string model = "1";
    std::string slice = "covid";
    std::string side = "away";
    std::string format = "text";
    std::string out;
    bool per_match = false;
};

std::string default_dataset()
{
    if (const char* env = std::getenv(kDatasetEnv); env && *env)
        return env;
    return kDefaultDatasetPath;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out)
{
    out << text;
    if (cfg.out.empty())
        return;
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw DataError("cannot write output file: " + cfg.out);
    file << text;
}

Date parse_cutoff(const std::string& text)
{
    const auto d = parse_date(text);
    if (!d)
        throw UsageError("invalid --cutoff date '" + text + "' (expected YYYY-MM-DD)");
    return *d;
}

int cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (!cfg.season_ids.empty() && cfg.season_ids.size() != cfg.inputs.size())
        throw UsageError("--season-id must be given once per --input or not at all");
    IngestOptions options;
    options.closed_doors_cutoff = parse_cutoff(cfg.cutoff);
    options.parallel = !cfg.sequential;

    std::vector<RawSeasonFile> files;
    for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
        std::optional<int> season;
        if (!cfg.season_ids.empty())
            season = cfg.season_ids[i];
        files.push_back(load_season_file(cfg.inputs[i], season));
    }
    Dataset ds = ingest(files, options);

    // Bookmaker agreement is informational; low correlation is noted, not fatal.
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto pairs = bookmaker_correlations(files[i]);
        if (pairs.empty())
            continue;
        double min_home = 1.0, min_away = 1.0;
        for (const auto& p : pairs) {
            min_home = std::min(min_home, p.home);
            min_away = std::min(min_away, p.away);
        }
        for (auto& prov : ds.provenance) {
            if (prov.source != files[i].source)
                continue;
            std::ostringstream note;
            note << "bookmaker home-odds correlation: min " << min_home << " over " << pairs.size()
                 << " pairs (away min " << min_away << "); gate " << (correlation_gate(pairs) ? "passed" : "FAILED");
            prov.notes.push_back(note.str());
        }
    }

    write_dataset(ds, cfg.dataset);
    if (cfg.provenance.empty()) {
        write_provenance(ds, err);
    } else {
        std::ofstream log(cfg.provenance, std::ios::binary | std::ios::trunc);
        if (!log)
            throw DataError("cannot write provenance log: " + cfg.provenance);
        write_provenance(ds, log);
    }
    out << "wrote " << ds.matches.size() << " matches from " << files.size() << " file(s) to " << cfg.dataset
        << '\n';
    return 0;
}

int cmd_fit(const Dataset& ds, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const Format fmt = parse_format(cfg.format);
    std::vector<NamedFit> fits;
    if (cfg.model == "1" || cfg.model == "both")
        fits.push_back({"Model 1", fit_bet_model(ds, 1)});
    if (cfg.model == "2" || cfg.model == "both")
        fits.push_back({"Model 2", fit_bet_model(ds, 2)});
    if (cfg.model == "margin")
        fits.push_back({"Margin", fit_margin_model(ds)});
    if (fits.empty())
        throw UsageError("unknown --model '" + cfg.model + "' (expected 1, 2, both or margin)");
    emit(render_fits(fits, fmt), cfg, out);
    for (const auto& nf : fits) {
        if (!nf.fit.converged) {
            err << "error: " << nf.heading << " did not converge: " << nf.fit.diagnostic << '\n';
            return static_cast<int>(ExitCode::Numerical);
        }
    }
    return 0;
}

int cmd_backtest(const Dataset& ds, const RunConfig& cfg, std::ostream& out)
{
    const Format fmt = parse_format(cfg.format);
    if (cfg.slice == "all") {
        emit(render_backtests(backtest_table(ds), fmt), cfg, out);
        return 0;
    }
    const SliceSpec& slice = slice_by_key(cfg.slice);
    Side side;
    if (cfg.side == "home")
        side = Side::Home;
    else if (cfg.side == "away")
        side = Side::Away;
    else
        throw UsageError("unknown --side '" + cfg.side + "' (expected home or away)");
    emit(render_strategy(slice, backtest_flat(ds, slice, side), fmt), cfg, out);
    return 0;
}

int dispatch(const std::string& cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cmd == "ingest")
        return cmd_ingest(cfg, out, err);

    const Dataset ds = read_dataset(cfg.dataset);
    const Format fmt = parse_format(cfg.format);
    if (cmd == "describe") {
        std::string text = render_outcomes(outcome_table(ds), fmt);
        text += fmt == Format::Text ? "\n" : "";
        text += render_goals(goals_table(ds), fmt);
        emit(text, cfg, out);
        return 0;
    }
    if (cmd == "margins") {
        emit(render_margins(margins_table(ds), fmt), cfg, out);
        return 0;
    }
    if (cmd == "fit")
        return cmd_fit(ds, cfg, out, err);
    if (cmd == "backtest")
        return cmd_backtest(ds, cfg, out);
    if (cmd == "bins") {
        emit(render_bins(bins_table(ds, slice_by_key(cfg.slice), cfg.bin_width), fmt), cfg, out);
        return 0;
    }
    if (cmd == "curve") {
        const FitResult m1 = fit_bet_model(ds, 1);
        const auto points = cfg.per_match ? curve_match_points(m1, ds) : curve_points(m1, default_curve_grid());
        emit(render_curve(points, fmt), cfg, out);
        return 0;
    }
    if (cmd == "report") {
        emit(full_report(ds, fmt, cfg.bin_width), cfg, out);
        return 0;
    }
    throw UsageError("unknown subcommand " + cmd);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    cfg.dataset = default_dataset();

    CLI::App app{"Bundesliga betting-market analysis around the 2020 closed-doors restart", "homebias"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    auto add_dataset = [&](CLI::App* sub) {
        sub->add_option("--dataset", cfg.dataset, "Canonical dataset file (env " + std::string(kDatasetEnv) + ")")
            ->capture_default_str();
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"text", "delimited", "structured"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "Also write the output to this file");
    };

    auto* ingest_cmd = app.add_subcommand("ingest", "Parse season files into the canonical dataset");
    ingest_cmd->add_option("--input,-i", cfg.inputs, "Season CSV file (repeatable)")->required()->check(CLI::ExistingFile);
    ingest_cmd->add_option("--season-id", cfg.season_ids, "Season index per input (0 = 2014/15); inferred from dates when omitted");
    ingest_cmd->add_option("--cutoff", cfg.cutoff, "First closed-doors date in 2019/20 (YYYY-MM-DD)")->capture_default_str();
    ingest_cmd->add_option("--provenance", cfg.provenance, "Write the provenance log here instead of stderr");
    ingest_cmd->add_flag("--sequential", cfg.sequential, "Parse files one at a time");
    add_dataset(ingest_cmd);

    auto* describe_cmd = app.add_subcommand("describe", "Match outcome shares and goal averages per period");
    auto* margins_cmd = app.add_subcommand("margins", "Mean bookmaker margin per period");
    auto* fit_cmd = app.add_subcommand("fit", "Fit the bet-win logit (1, 2, both) or the margin regression");
    fit_cmd->add_option("--model", cfg.model, "1, 2, both or margin")->capture_default_str();
    auto* backtest_cmd = app.add_subcommand("backtest", "Flat-stake return on investment");
    backtest_cmd->add_option("--slice", cfg.slice, "prior-early, prior-late, spectators, covid or all")->capture_default_str();
    backtest_cmd->add_option("--side", cfg.side, "home or away")->capture_default_str();
    auto* bins_cmd = app.add_subcommand("bins", "Outcomes by ImpProbDiff bin");
    bins_cmd->add_option("--width", cfg.bin_width, "Bin width")->capture_default_str();
    bins_cmd->add_option("--slice", cfg.slice, "prior-early, prior-late, spectators or covid")->capture_default_str();
    auto* curve_cmd = app.add_subcommand("curve", "Implied vs Model 1 expected win probabilities");
    curve_cmd->add_flag("--per-match", cfg.per_match, "One point per bet instead of a uniform grid");
    auto* report_cmd = app.add_subcommand("report", "All tables, fits, backtests, bins and curve data");
    report_cmd->add_option("--width", cfg.bin_width, "Bin width")->capture_default_str();

    for (auto* sub : {describe_cmd, margins_cmd, fit_cmd, backtest_cmd, bins_cmd, curve_cmd, report_cmd}) {
        add_dataset(sub);
        add_output(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, cfg, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Numerical);
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Data);
    } catch (const DomainError& e) {
        err << "data error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Data);
    }
}

}  // namespace homebias
