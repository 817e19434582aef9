#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chordwise {

// Immutable categorical dataset. Cell values are dictionary-encoded per
// column in first-occurrence order; the empty string is a category like any
// other. Storage is column-major.
class Dataset {
public:
    // Parses comma-separated text with a mandatory header row. Throws
    // IoError, EmptyFile (no data rows), RaggedRow (wrong cell count, with
    // the 1-based line number) or DuplicateColumn.
    static Dataset from_csv_file(const std::string& path);
    static Dataset from_csv(std::istream& in);

    // Test constructor: rows of raw values, one vector per row.
    static Dataset from_rows(std::vector<std::string> column_names,
                             const std::vector<std::vector<std::string>>& rows);

    int n_columns() const { return static_cast<int>(columns_.size()); }
    std::size_t n_rows() const { return rows_; }

    const std::string& column_name(int c) const { return columns_[static_cast<std::size_t>(c)].name; }
    int domain_size(int c) const {
        return static_cast<int>(columns_[static_cast<std::size_t>(c)].categories.size());
    }
    const std::vector<std::string>& categories(int c) const {
        return columns_[static_cast<std::size_t>(c)].categories;
    }

    std::uint32_t code(int c, std::size_t row) const {
        return codes_[static_cast<std::size_t>(c)][row];
    }
    const std::vector<std::uint32_t>& column_codes(int c) const {
        return codes_[static_cast<std::size_t>(c)];
    }

private:
    struct Column {
        std::string name;
        std::vector<std::string> categories;
    };

    std::vector<Column> columns_;
    std::vector<std::vector<std::uint32_t>> codes_;
    std::size_t rows_ = 0;
};

}  // namespace chordwise
