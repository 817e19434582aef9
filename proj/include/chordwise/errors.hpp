#pragma once

#include <stdexcept>
#include <string>

namespace chordwise {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph / structure errors.
struct NotAPermutation : Error {
    using Error::Error;
};
struct NotChordal : Error {
    using Error::Error;
};
struct NotEligible : Error {
    using Error::Error;
};
struct AreAdjacent : Error {
    using Error::Error;
};

// A maintained structure failed a consistency check; indicates a bug.
struct InternalInconsistency : Error {
    using Error::Error;
};

// Scoring errors.
struct EmptyDataset : Error {
    using Error::Error;
};
struct NotInClique : Error {
    using Error::Error;
};
struct SeparatorNotPresent : Error {
    using Error::Error;
};
struct ColumnMismatch : Error {
    using Error::Error;
};

// Ingest errors.
struct IoError : Error {
    using Error::Error;
};
struct EmptyFile : Error {
    using Error::Error;
};
struct RaggedRow : Error {
    RaggedRow(int line_no, const std::string& msg) : Error(msg), line(line_no) {}
    int line;
};
struct DuplicateColumn : Error {
    DuplicateColumn(std::string col, const std::string& msg) : Error(msg), name(std::move(col)) {}
    std::string name;
};

// Output errors.
struct UnknownFormat : Error {
    using Error::Error;
};

}  // namespace chordwise
