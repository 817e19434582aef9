#include "chordwise/dataset.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "chordwise/errors.hpp"

namespace chordwise {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += ch;
        }
    }
    out.push_back(std::move(cell));
    return out;
}

}  // namespace

Dataset Dataset::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return from_csv(in);
}

Dataset Dataset::from_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        header = split_csv_line(line);
        break;
    }
    if (line_no == 0) throw EmptyFile("input has no header row");

    Dataset d;
    std::vector<std::unordered_map<std::string, std::uint32_t>> dict(header.size());
    {
        std::unordered_map<std::string, int> seen;
        for (const std::string& name : header) {
            if (!seen.emplace(name, 1).second)
                throw DuplicateColumn(name, "duplicate column name: " + name);
            d.columns_.push_back({name, {}});
        }
    }
    d.codes_.resize(header.size());

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw RaggedRow(line_no, "line " + std::to_string(line_no) + " has " +
                                         std::to_string(cells.size()) + " cells, expected " +
                                         std::to_string(header.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto [it, fresh] =
                dict[c].emplace(cells[c], static_cast<std::uint32_t>(dict[c].size()));
            if (fresh) d.columns_[c].categories.push_back(cells[c]);
            d.codes_[c].push_back(it->second);
        }
        ++d.rows_;
    }
    if (d.rows_ == 0) throw EmptyFile("input has no data rows");
    return d;
}

Dataset Dataset::from_rows(std::vector<std::string> column_names,
                           const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream ss;
    for (std::size_t c = 0; c < column_names.size(); ++c)
        ss << (c ? "," : "") << column_names[c];
    ss << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) ss << (c ? "," : "") << row[c];
        ss << '\n';
    }
    std::istringstream in(ss.str());
    return from_csv(in);
}

}  // namespace chordwise
