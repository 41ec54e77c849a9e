#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homebias/market_math.hpp"

namespace homebias {

using Date = std::chrono::year_month_day;

/// Seasons are indexed from the first analysed season (0 = 2014/15).
inline constexpr int kFirstSeasonYear = 2014;
inline constexpr int kClosedDoorsSeason = 5;
inline constexpr int kRoundsPerSeason = 34;
inline constexpr int kMatchesPerRound = 9;
inline constexpr int kMatchesPerSeason = kRoundsPerSeason * kMatchesPerRound;
inline constexpr int kBreakRound = 25;

/// First date (inclusive) on which 2019/20 matches were played without spectators.
inline constexpr Date kDefaultClosedDoorsCutoff{std::chrono::year{2020}, std::chrono::month{3},
                                                std::chrono::day{10}};

enum class Outcome : std::uint8_t { HomeWin, Draw, AwayWin };

/// Result implied by a scoreline.
Outcome outcome_from_goals(int home_goals, int away_goals) noexcept;
char outcome_code(Outcome o) noexcept;
std::optional<Outcome> outcome_from_code(std::string_view code) noexcept;

/// Parses d/m/yy, d/m/yyyy or ISO yyyy-mm-dd.
std::optional<Date> parse_date(std::string_view text) noexcept;
std::string format_date(const Date& d);

struct PeriodLabel {
    bool after_round_25 = false;
    bool behind_closed_doors = false;
    int round_after_25 = 0;

    bool operator==(const PeriodLabel&) const = default;
};

struct MatchRecord {
    int season_id = 0;
    Date date{};
    std::string home_team;
    std::string away_team;
    int home_goals = 0;
    int away_goals = 0;
    Outcome result = Outcome::Draw;
    OddsTriple odds;
    int round = 0;  // 0 until inferred
    PeriodLabel period;

    bool operator==(const MatchRecord&) const = default;
};

/// Ingestion notes for one source file.
struct FileProvenance {
    std::string source;
    int season_id = 0;
    std::size_t rows_read = 0;
    std::size_t rows_kept = 0;
    std::size_t rows_dropped = 0;
    std::size_t odds_from_average = 0;
    std::size_t odds_from_books = 0;
    std::vector<std::string> notes;

    bool operator==(const FileProvenance&) const = default;
};

struct Dataset {
    Date closed_doors_cutoff = kDefaultClosedDoorsCutoff;
    std::vector<MatchRecord> matches;
    std::vector<FileProvenance> provenance;

    bool operator==(const Dataset&) const = default;
};

}  // namespace homebias
