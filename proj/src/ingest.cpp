#include "homebias/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "homebias/errors.hpp"

namespace homebias {

namespace {

using namespace std::chrono;

template <class T>
std::optional<T> parse_number(std::string_view s) noexcept
{
    s = csv::trim(s);
    if (s.empty())
        return std::nullopt;
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header, std::string_view name)
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::nullopt;
}

std::string_view field(const std::vector<std::string>& row, std::size_t idx) noexcept
{
    return idx < row.size() ? std::string_view(row[idx]) : std::string_view{};
}

std::optional<OddsTriple> read_triple(const OddsColumns::Triple& t, const std::vector<std::string>& row)
{
    const auto h = parse_number<double>(field(row, t.home));
    const auto d = parse_number<double>(field(row, t.draw));
    const auto a = parse_number<double>(field(row, t.away));
    if (!h || !d || !a)
        return std::nullopt;
    OddsTriple odds{*h, *d, *a};
    if (!is_valid(odds))
        return std::nullopt;
    return odds;
}

// Aggregate columns that are not individual bookmakers.
bool is_aggregate_prefix(std::string_view p) noexcept
{
    for (std::string_view agg : {"Avg", "Max", "BbAv", "BbMx", "Bb"})
        if (p.substr(0, agg.size()) == agg)
            return true;
    return false;
}

struct RequiredColumns {
    std::size_t date, home, away, fthg, ftag, ftr;
};

RequiredColumns required_columns(const std::vector<std::string>& header, const std::string& source)
{
    std::vector<std::string> missing;
    auto need = [&](std::string_view name) {
        const auto idx = find_column(header, name);
        if (!idx)
            missing.emplace_back(name);
        return idx.value_or(0);
    };
    RequiredColumns cols{need("Date"), need("HomeTeam"), need("AwayTeam"),
                         need("FTHG"), need("FTAG"),     need("FTR")};
    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing)
            names += (names.empty() ? "" : ", ") + m;
        throw IngestError(source + ": header is missing required column(s): " + names);
    }
    return cols;
}

}  // namespace

Outcome outcome_from_goals(int home_goals, int away_goals) noexcept
{
    if (home_goals > away_goals)
        return Outcome::HomeWin;
    if (home_goals < away_goals)
        return Outcome::AwayWin;
    return Outcome::Draw;
}

char outcome_code(Outcome o) noexcept
{
    switch (o) {
    case Outcome::HomeWin: return 'H';
    case Outcome::Draw: return 'D';
    case Outcome::AwayWin: return 'A';
    }
    return '?';
}

std::optional<Outcome> outcome_from_code(std::string_view code) noexcept
{
    code = csv::trim(code);
    if (code == "H")
        return Outcome::HomeWin;
    if (code == "D")
        return Outcome::Draw;
    if (code == "A")
        return Outcome::AwayWin;
    return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text) noexcept
{
    text = csv::trim(text);
    std::vector<std::string_view> parts;
    char sep = text.find('-') != std::string_view::npos ? '-' : '/';
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    if (parts.size() != 3)
        return std::nullopt;
    std::optional<int> y, m, d;
    if (sep == '-') {
        if (parts[0].size() != 4)
            return std::nullopt;
        y = parse_number<int>(parts[0]);
        m = parse_number<int>(parts[1]);
        d = parse_number<int>(parts[2]);
    } else {
        d = parse_number<int>(parts[0]);
        m = parse_number<int>(parts[1]);
        y = parse_number<int>(parts[2]);
        if (parts[2].size() == 2 && y)
            *y += 2000;
        else if (parts[2].size() != 4)
            return std::nullopt;
    }
    if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > 31)
        return std::nullopt;
    const Date date{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}};
    if (!date.ok())
        return std::nullopt;
    return date;
}

std::string format_date(const Date& d)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

int season_of(const Date& d) noexcept
{
    const int y = static_cast<int>(d.year());
    const int start = static_cast<unsigned>(d.month()) >= 7 ? y : y - 1;
    return start - kFirstSeasonYear;
}

RawSeasonFile load_season_file(const std::filesystem::path& path, std::optional<int> season_id)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IngestError("cannot open season file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return {path.string(), season_id, buf.str()};
}

OddsColumns OddsColumns::from_header(const std::vector<std::string>& header)
{
    OddsColumns cols;
    auto triple = [&](const std::string& prefix) -> std::optional<Triple> {
        const auto h = find_column(header, prefix + "H");
        const auto d = find_column(header, prefix + "D");
        const auto a = find_column(header, prefix + "A");
        if (h && d && a)
            return Triple{prefix, *h, *d, *a};
        return std::nullopt;
    };

    // Newer files label the pre-match market average "Avg", older ones "BbAv".
    for (const char* name : {"Avg", "BbAv"}) {
        if (auto t = triple(name)) {
            cols.average_ = std::move(t);
            break;
        }
    }

    std::set<std::string> prefixes;
    for (const auto& col : header) {
        if (col.size() < 2 || col.back() != 'H')
            continue;
        const std::string prefix = col.substr(0, col.size() - 1);
        if (is_aggregate_prefix(prefix) || !triple(prefix))
            continue;
        prefixes.insert(prefix);
    }
    // Closing prices repeat a bookmaker prefix with a trailing 'C' (B365 -> B365C).
    for (const auto& p : prefixes) {
        if (p.size() > 1 && p.back() == 'C' && prefixes.count(p.substr(0, p.size() - 1)))
            continue;
        cols.books_.push_back(*triple(p));
    }
    std::sort(cols.books_.begin(), cols.books_.end(),
              [](const Triple& a, const Triple& b) { return a.home < b.home; });
    return cols;
}

std::optional<OddsTriple> consolidate_odds(const OddsColumns& columns,
                                           const std::vector<std::string>& row, OddsSource* used)
{
    if (columns.average()) {
        if (auto avg = read_triple(*columns.average(), row)) {
            if (used)
                *used = OddsSource::MarketAverage;
            return avg;
        }
    }
    double h = 0.0, d = 0.0, a = 0.0;
    std::size_t n = 0;
    for (const auto& book : columns.books()) {
        if (auto odds = read_triple(book, row)) {
            h += odds->home;
            d += odds->draw;
            a += odds->away;
            ++n;
        }
    }
    if (n == 0)
        return std::nullopt;
    const double k = static_cast<double>(n);
    if (used)
        *used = OddsSource::BookmakerMean;
    return OddsTriple{h / k, d / k, a / k};
}

std::vector<MatchRecord> parse_season_file(const RawSeasonFile& file, FileProvenance& provenance)
{
    std::istringstream in(file.text);
    const csv::Table table = csv::read(in);
    const RequiredColumns cols = required_columns(table.header, file.source);
    const OddsColumns odds_cols = OddsColumns::from_header(table.header);
    if (odds_cols.empty())
        throw IngestError(file.source + ": header has no odds columns (average or bookmaker triples)");

    provenance.source = file.source;
    provenance.notes.push_back(
        "odds columns: average=" + (odds_cols.average() ? odds_cols.average()->name : "none") +
        ", bookmakers=" + std::to_string(odds_cols.books().size()));

    std::vector<MatchRecord> out;
    out.reserve(table.rows.size());
    for (const auto& rec : table.rows) {
        ++provenance.rows_read;
        const auto& row = rec.fields;
        auto drop = [&](const std::string& why) {
            ++provenance.rows_dropped;
            provenance.notes.push_back("line " + std::to_string(rec.line) + " dropped: " + why);
        };

        const auto date = parse_date(field(row, cols.date));
        if (!date)
            throw RowError(rec.line, file.source + ": unparseable date '" +
                                         std::string(field(row, cols.date)) + "'");

        const auto hg_text = csv::trim(field(row, cols.fthg));
        const auto ag_text = csv::trim(field(row, cols.ftag));
        const auto ftr_text = csv::trim(field(row, cols.ftr));
        if (hg_text.empty() || ag_text.empty() || ftr_text.empty()) {
            drop("missing result");
            continue;
        }
        const auto hg = parse_number<int>(hg_text);
        const auto ag = parse_number<int>(ag_text);
        const auto ftr = outcome_from_code(ftr_text);
        if (!hg || !ag || *hg < 0 || *ag < 0)
            throw RowError(rec.line, file.source + ": goals are not non-negative integers");
        if (!ftr)
            throw RowError(rec.line, file.source + ": unknown result code '" + std::string(ftr_text) + "'");
        if (*ftr != outcome_from_goals(*hg, *ag))
            throw RowError(rec.line, file.source + ": result code disagrees with the score");

        const std::string home(csv::trim(field(row, cols.home)));
        const std::string away(csv::trim(field(row, cols.away)));
        if (home.empty() || away.empty())
            throw RowError(rec.line, file.source + ": missing team name");
        if (home == away)
            throw RowError(rec.line, file.source + ": home and away team are both '" + home + "'");

        OddsSource used{};
        const auto odds = consolidate_odds(odds_cols, row, &used);
        if (!odds) {
            drop("odds missing");
            continue;
        }
        if (used == OddsSource::MarketAverage)
            ++provenance.odds_from_average;
        else
            ++provenance.odds_from_books;

        MatchRecord m;
        m.date = *date;
        m.home_team = home;
        m.away_team = away;
        m.home_goals = *hg;
        m.away_goals = *ag;
        m.result = *ftr;
        m.odds = *odds;
        out.push_back(std::move(m));
    }

    int season = 0;
    if (file.season_id)
        season = *file.season_id;
    else if (!out.empty())
        season = season_of(out.front().date);
    else
        throw IngestError(file.source + ": no playable rows, cannot determine the season");
    for (auto& m : out)
        m.season_id = season;
    provenance.season_id = season;
    provenance.rows_kept = out.size();
    return out;
}

void infer_rounds(std::vector<MatchRecord>& matches, int season_id, FileProvenance& provenance)
{
    std::stable_sort(matches.begin(), matches.end(), [](const MatchRecord& a, const MatchRecord& b) {
        return sys_days{a.date} < sys_days{b.date};
    });

    std::map<std::string, int> played;
    std::map<std::string, int> home_games;
    for (auto& m : matches) {
        if (m.season_id != season_id)
            throw ConsistencyError("infer_rounds: match " + m.home_team + " v " + m.away_team +
                                   " belongs to season " + std::to_string(m.season_id) +
                                   ", expected " + std::to_string(season_id));
        int& h = played[m.home_team];
        int& a = played[m.away_team];
        m.round = std::max(h, a) + 1;
        if (h != a) {
            std::ostringstream note;
            note << "round inference: " << format_date(m.date) << ' ' << m.home_team << " (" << h
                 << " prior) v " << m.away_team << " (" << a << " prior) -> round " << m.round;
            provenance.notes.push_back(note.str());
        }
        if (m.round > kRoundsPerSeason)
            throw ConsistencyError("infer_rounds: " + m.home_team + " v " + m.away_team + " on " +
                                   format_date(m.date) + " would fall in round " +
                                   std::to_string(m.round));
        ++h;
        ++a;
        ++home_games[m.home_team];
    }

    if (matches.size() != static_cast<std::size_t>(kMatchesPerSeason)) {
        provenance.notes.push_back("season " + std::to_string(season_id) + " has " +
                                   std::to_string(matches.size()) +
                                   " matches; treated as incomplete, per-team counts not checked");
        return;
    }
    std::string offenders;
    for (const auto& [team, n] : played) {
        const int home = home_games[team];
        if (n != kRoundsPerSeason || home * 2 != kRoundsPerSeason)
            offenders += (offenders.empty() ? "" : ", ") + team + " (" + std::to_string(n) +
                         " matches, " + std::to_string(home) + " home)";
    }
    if (!offenders.empty())
        throw ConsistencyError("season " + std::to_string(season_id) +
                               ": teams without 34 matches (17 home, 17 away): " + offenders);
}

void label_periods(std::vector<MatchRecord>& matches, Date closed_doors_cutoff)
{
    for (auto& m : matches) {
        m.period.after_round_25 = m.round > kBreakRound;
        m.period.round_after_25 = std::max(m.round - kBreakRound, 0);
        m.period.behind_closed_doors =
            m.season_id == kClosedDoorsSeason && sys_days{m.date} >= sys_days{closed_doors_cutoff};
    }
}

std::vector<BookCorrelation> bookmaker_correlations(const RawSeasonFile& file, std::size_t min_common_rows)
{
    std::istringstream in(file.text);
    const csv::Table table = csv::read(in);
    const OddsColumns cols = OddsColumns::from_header(table.header);
    const auto& books = cols.books();

    std::vector<std::vector<std::optional<OddsTriple>>> quotes(books.size());
    for (std::size_t b = 0; b < books.size(); ++b)
        for (const auto& rec : table.rows)
            quotes[b].push_back(read_triple(books[b], rec.fields));

    auto pearson = [](const std::vector<double>& x, const std::vector<double>& y) {
        const double n = static_cast<double>(x.size());
        const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
        const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        return sxy / std::sqrt(sxx * syy);
    };

    std::vector<BookCorrelation> out;
    for (std::size_t i = 0; i < books.size(); ++i) {
        for (std::size_t j = i + 1; j < books.size(); ++j) {
            std::vector<double> hi, hj, ai, aj;
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                if (quotes[i][r] && quotes[j][r]) {
                    hi.push_back(quotes[i][r]->home);
                    hj.push_back(quotes[j][r]->home);
                    ai.push_back(quotes[i][r]->away);
                    aj.push_back(quotes[j][r]->away);
                }
            }
            if (hi.size() < min_common_rows)
                continue;
            out.push_back({books[i].name, books[j].name, hi.size(), pearson(hi, hj), pearson(ai, aj)});
        }
    }
    return out;
}

bool correlation_gate(const std::vector<BookCorrelation>& pairs, double threshold) noexcept
{
    return std::all_of(pairs.begin(), pairs.end(),
                       [&](const BookCorrelation& c) { return c.home >= threshold; });
}

bool canonical_less(const MatchRecord& a, const MatchRecord& b) noexcept
{
    if (a.season_id != b.season_id)
        return a.season_id < b.season_id;
    if (a.date != b.date)
        return sys_days{a.date} < sys_days{b.date};
    return a.home_team < b.home_team;
}

Dataset ingest(const std::vector<RawSeasonFile>& files, const IngestOptions& options)
{
    struct Parsed {
        std::vector<MatchRecord> matches;
        FileProvenance provenance;
    };
    auto work = [&options](const RawSeasonFile& file) {
        Parsed p;
        p.matches = parse_season_file(file, p.provenance);
        infer_rounds(p.matches, p.provenance.season_id, p.provenance);
        label_periods(p.matches, options.closed_doors_cutoff);
        return p;
    };

    std::vector<Parsed> parsed;
    parsed.reserve(files.size());
    if (options.parallel && files.size() > 1) {
        std::vector<std::future<Parsed>> jobs;
        for (const auto& f : files)
            jobs.push_back(std::async(std::launch::async, work, std::cref(f)));
        for (auto& j : jobs)
            parsed.push_back(j.get());
    } else {
        for (const auto& f : files)
            parsed.push_back(work(f));
    }

    Dataset ds;
    ds.closed_doors_cutoff = options.closed_doors_cutoff;
    std::set<int> seen;
    for (auto& p : parsed) {
        if (!seen.insert(p.provenance.season_id).second)
            throw IngestError("season " + std::to_string(p.provenance.season_id) +
                              " supplied more than once (" + p.provenance.source + ")");
        ds.matches.insert(ds.matches.end(), std::make_move_iterator(p.matches.begin()),
                          std::make_move_iterator(p.matches.end()));
        ds.provenance.push_back(std::move(p.provenance));
    }
    std::stable_sort(ds.matches.begin(), ds.matches.end(), canonical_less);
    std::sort(ds.provenance.begin(), ds.provenance.end(),
              [](const FileProvenance& a, const FileProvenance& b) { return a.season_id < b.season_id; });
    return ds;
}

}  // namespace homebias
