#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "homebias/csv.hpp"
#include "homebias/dataset.hpp"

namespace homebias {

/// A season file in the football-data.co.uk division layout, already read
/// into memory. `season_id` is inferred from the first match date when unset.
struct RawSeasonFile {
    std::string source;
    std::optional<int> season_id;
    std::string text;
};

RawSeasonFile load_season_file(const std::filesystem::path& path,
                               std::optional<int> season_id = std::nullopt);

/// Season index of a match date: seasons start in July.
int season_of(const Date& d) noexcept;

enum class OddsSource { MarketAverage, BookmakerMean };

/// Column positions of the odds triples present in a header.
class OddsColumns {
public:
    struct Triple {
        std::string name;
        std::size_t home = 0;
        std::size_t draw = 0;
        std::size_t away = 0;
    };

    static OddsColumns from_header(const std::vector<std::string>& header);

    const std::optional<Triple>& average() const noexcept { return average_; }
    const std::vector<Triple>& books() const noexcept { return books_; }
    bool empty() const noexcept { return !average_ && books_.empty(); }

private:
    std::optional<Triple> average_;
    std::vector<Triple> books_;
};

/// One average odds triple for a row: the market-average columns if they hold
/// valid prices, otherwise the mean over all complete bookmaker triples.
/// Returns nullopt when the row has no usable odds.
std::optional<OddsTriple> consolidate_odds(const OddsColumns& columns,
                                           const std::vector<std::string>& row,
                                           OddsSource* used = nullptr);

/// Parses playable rows. Rows without a result or without odds are dropped
/// and noted in `provenance`. Round and period are left unset.
std::vector<MatchRecord> parse_season_file(const RawSeasonFile& file, FileProvenance& provenance);

/// Sets `round` on matches of one season. Input must be date ordered.
/// Throws ConsistencyError when a complete season has a team without 34 matches.
void infer_rounds(std::vector<MatchRecord>& matches, int season_id, FileProvenance& provenance);

void label_periods(std::vector<MatchRecord>& matches, Date closed_doors_cutoff = kDefaultClosedDoorsCutoff);

/// Pearson correlation of two bookmakers' odds over rows where both quote.
struct BookCorrelation {
    std::string first;
    std::string second;
    std::size_t rows = 0;
    double home = 0.0;
    double away = 0.0;
};

std::vector<BookCorrelation> bookmaker_correlations(const RawSeasonFile& file,
                                                    std::size_t min_common_rows = 30);

/// True when every pair's home odds correlate at least at `threshold`.
bool correlation_gate(const std::vector<BookCorrelation>& pairs, double threshold = 0.9) noexcept;

struct IngestOptions {
    Date closed_doors_cutoff = kDefaultClosedDoorsCutoff;
    bool parallel = true;
};

/// Full pipeline: parse (possibly concurrently), infer rounds, label periods
/// and merge in (season, date, home team) order.
Dataset ingest(const std::vector<RawSeasonFile>& files, const IngestOptions& options = {});

/// Canonical ordering used by the merged dataset.
bool canonical_less(const MatchRecord& a, const MatchRecord& b) noexcept;

}  // namespace homebias
