#include "homebias/csv.hpp"

#include "homebias/errors.hpp"

namespace homebias::csv {

std::string_view trim(std::string_view s) noexcept
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(std::string_view line, char delim)
{
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.emplace_back(trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.emplace_back(trim(field));
    return out;
}

Table read(std::istream& in, char delim)
{
    Table table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (lineno == 1 && view.substr(0, 3) == "\xEF\xBB\xBF")
            view.remove_prefix(3);
        if (trim(view).empty())
            continue;
        auto fields = split_line(view, delim);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        // Rows consisting only of delimiters are padding at the end of some files.
        bool all_empty = true;
        for (const auto& f : fields)
            all_empty = all_empty && f.empty();
        if (all_empty)
            continue;
        table.rows.push_back({lineno, std::move(fields)});
    }
    if (!have_header)
        throw IngestError("empty input: no header row");
    return table;
}

}  // namespace homebias::csv
