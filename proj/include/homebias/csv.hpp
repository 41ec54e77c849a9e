#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace homebias::csv {

/// One parsed record and the physical line it started on (1-based).
struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Record> rows;
};

/// Splits one line on `delim`, honouring double-quoted fields.
std::vector<std::string> split_line(std::string_view line, char delim = ',');

/// Reads a header plus records. Blank lines are skipped; a UTF-8 BOM and
/// trailing CR are stripped. Throws IngestError if there is no header.
Table read(std::istream& in, char delim = ',');

std::string_view trim(std::string_view s) noexcept;

}  // namespace homebias::csv
