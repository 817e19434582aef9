#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "chordwise/dataset.hpp"
#include "chordwise/errors.hpp"

using namespace chordwise;

TEST_CASE("csv parsing encodes categories in first-occurrence order") {
    std::istringstream in("left,right\na,x\na,y\nb,x\n");
    Dataset d = Dataset::from_csv(in);

    CHECK(d.n_columns() == 2);
    CHECK(d.n_rows() == 3);
    CHECK(d.column_name(0) == "left");
    CHECK(d.column_name(1) == "right");
    CHECK(d.domain_size(0) == 2);
    CHECK(d.domain_size(1) == 2);
    CHECK(d.categories(0) == std::vector<std::string>{"a", "b"});
    CHECK(d.categories(1) == std::vector<std::string>{"x", "y"});

    CHECK(d.code(0, 0) == 0);
    CHECK(d.code(0, 1) == 0);
    CHECK(d.code(0, 2) == 1);
    CHECK(d.column_codes(1) == std::vector<std::uint32_t>{0, 1, 0});
}

TEST_CASE("header-only input is rejected") {
    std::istringstream in("a,b,c\n");
    CHECK_THROWS_AS(Dataset::from_csv(in), EmptyFile);
}

TEST_CASE("completely empty input is rejected") {
    std::istringstream in("");
    CHECK_THROWS_AS(Dataset::from_csv(in), EmptyFile);
}

TEST_CASE("ragged rows report the offending line") {
    std::istringstream in("a,b\n1,2\n3\n");
    try {
        Dataset::from_csv(in);
        FAIL("expected RaggedRow");
    } catch (const RaggedRow& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("extra cells are also ragged") {
    std::istringstream in("a,b\n1,2,3\n");
    CHECK_THROWS_AS(Dataset::from_csv(in), RaggedRow);
}

TEST_CASE("duplicate column names are rejected") {
    std::istringstream in("a,b,a\n1,2,3\n");
    CHECK_THROWS_AS(Dataset::from_csv(in), DuplicateColumn);
}

TEST_CASE("carriage returns are stripped from line ends") {
    std::istringstream in("a,b\r\nu,v\r\nu,w\r\n");
    Dataset d = Dataset::from_csv(in);
    CHECK(d.n_rows() == 2);
    CHECK(d.column_name(1) == "b");
    CHECK(d.categories(1) == std::vector<std::string>{"v", "w"});
}

TEST_CASE("empty strings are ordinary categories") {
    std::istringstream in("a,b\n,x\nz,\n,x\n");
    Dataset d = Dataset::from_csv(in);
    CHECK(d.n_rows() == 3);
    CHECK(d.domain_size(0) == 2);
    CHECK(d.categories(0) == std::vector<std::string>{"", "z"});
    CHECK(d.categories(1) == std::vector<std::string>{"x", ""});
    CHECK(d.column_codes(0) == std::vector<std::uint32_t>{0, 1, 0});
}

TEST_CASE("single column and trailing newline-free input parse") {
    std::istringstream in("only\nv1\nv2");
    Dataset d = Dataset::from_csv(in);
    CHECK(d.n_columns() == 1);
    CHECK(d.n_rows() == 2);
    CHECK(d.domain_size(0) == 2);
}

TEST_CASE("missing file raises an io error") {
    CHECK_THROWS_AS(Dataset::from_csv_file("/nonexistent/input.csv"), IoError);
}

TEST_CASE("from_rows mirrors csv parsing") {
    Dataset d = Dataset::from_rows({"p", "q"}, {{"a", "x"}, {"a", "y"}, {"b", "x"}});
    CHECK(d.n_columns() == 2);
    CHECK(d.n_rows() == 3);
    CHECK(d.domain_size(0) == 2);
    CHECK(d.code(1, 1) == 1);

    std::istringstream in("p,q\na,x\na,y\nb,x\n");
    Dataset viacsv = Dataset::from_csv(in);
    for (int c = 0; c < 2; ++c) CHECK(d.column_codes(c) == viacsv.column_codes(c));
}
