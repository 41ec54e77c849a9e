#include "homebias/dataset_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "homebias/errors.hpp"

namespace homebias {

namespace {

using json = nlohmann::ordered_json;

Date date_field(const json& j, const char* key)
{
    const auto text = j.at(key).get<std::string>();
    const auto d = parse_date(text);
    if (!d)
        throw DataError(std::string("dataset: bad date in '") + key + "': " + text);
    return *d;
}

}  // namespace

std::string dataset_to_json(const Dataset& ds)
{
    json root;
    root["format"] = kDatasetFormat;
    root["version"] = kDatasetVersion;
    root["closed_doors_cutoff"] = format_date(ds.closed_doors_cutoff);

    json prov = json::array();
    for (const auto& p : ds.provenance) {
        prov.push_back({{"source", p.source},
                        {"season_id", p.season_id},
                        {"rows_read", p.rows_read},
                        {"rows_kept", p.rows_kept},
                        {"rows_dropped", p.rows_dropped},
                        {"odds_from_average", p.odds_from_average},
                        {"odds_from_books", p.odds_from_books},
                        {"notes", p.notes}});
    }
    root["provenance"] = std::move(prov);

    json matches = json::array();
    for (const auto& m : ds.matches) {
        matches.push_back({{"season_id", m.season_id},
                           {"date", format_date(m.date)},
                           {"home_team", m.home_team},
                           {"away_team", m.away_team},
                           {"home_goals", m.home_goals},
                           {"away_goals", m.away_goals},
                           {"result", std::string(1, outcome_code(m.result))},
                           {"odds", {m.odds.home, m.odds.draw, m.odds.away}},
                           {"round", m.round},
                           {"after_round_25", m.period.after_round_25},
                           {"behind_closed_doors", m.period.behind_closed_doors},
                           {"round_after_25", m.period.round_after_25}});
    }
    root["matches"] = std::move(matches);
    return root.dump(1) + "\n";
}

Dataset dataset_from_json(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("dataset: not valid JSON: ") + e.what());
    }
    try {
        if (root.at("format").get<std::string>() != kDatasetFormat)
            throw DataError("dataset: unexpected format tag");
        if (root.at("version").get<int>() != kDatasetVersion)
            throw DataError("dataset: unsupported version " + root.at("version").dump());

        Dataset ds;
        ds.closed_doors_cutoff = date_field(root, "closed_doors_cutoff");
        for (const auto& p : root.at("provenance")) {
            FileProvenance fp;
            fp.source = p.at("source").get<std::string>();
            fp.season_id = p.at("season_id").get<int>();
            fp.rows_read = p.at("rows_read").get<std::size_t>();
            fp.rows_kept = p.at("rows_kept").get<std::size_t>();
            fp.rows_dropped = p.at("rows_dropped").get<std::size_t>();
            fp.odds_from_average = p.at("odds_from_average").get<std::size_t>();
            fp.odds_from_books = p.at("odds_from_books").get<std::size_t>();
            fp.notes = p.at("notes").get<std::vector<std::string>>();
            ds.provenance.push_back(std::move(fp));
        }
        for (const auto& j : root.at("matches")) {
            MatchRecord m;
            m.season_id = j.at("season_id").get<int>();
            m.date = date_field(j, "date");
            m.home_team = j.at("home_team").get<std::string>();
            m.away_team = j.at("away_team").get<std::string>();
            m.home_goals = j.at("home_goals").get<int>();
            m.away_goals = j.at("away_goals").get<int>();
            const auto result = outcome_from_code(j.at("result").get<std::string>());
            if (!result || *result != outcome_from_goals(m.home_goals, m.away_goals))
                throw DataError("dataset: result inconsistent with score for " + m.home_team + " v " +
                                m.away_team);
            m.result = *result;
            const auto& odds = j.at("odds");
            m.odds = {odds.at(0).get<double>(), odds.at(1).get<double>(), odds.at(2).get<double>()};
            if (!is_valid(m.odds))
                throw DataError("dataset: invalid odds for " + m.home_team + " v " + m.away_team);
            m.round = j.at("round").get<int>();
            m.period.after_round_25 = j.at("after_round_25").get<bool>();
            m.period.behind_closed_doors = j.at("behind_closed_doors").get<bool>();
            m.period.round_after_25 = j.at("round_after_25").get<int>();
            ds.matches.push_back(std::move(m));
        }
        return ds;
    } catch (const json::exception& e) {
        throw DataError(std::string("dataset: malformed structure: ") + e.what());
    }
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("cannot write dataset file: " + path.string());
    out << dataset_to_json(ds);
    if (!out)
        throw DataError("write failed: " + path.string());
}

Dataset read_dataset(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open dataset file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return dataset_from_json(buf.str());
}

void write_provenance(const Dataset& ds, std::ostream& out)
{
    for (const auto& p : ds.provenance) {
        out << p.source << ": season " << p.season_id << ", read " << p.rows_read << ", kept "
            << p.rows_kept << ", dropped " << p.rows_dropped << ", odds from average "
            << p.odds_from_average << ", from bookmakers " << p.odds_from_books << '\n';
        for (const auto& note : p.notes)
            out << p.source << ": " << note << '\n';
    }
}

}  // namespace homebias
