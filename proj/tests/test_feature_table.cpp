#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "causalprobe/errors.hpp"
#include "causalprobe/feature_table.hpp"

using namespace causalprobe;

namespace {

std::string idOf(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.id();
    }
    return "";
}

}  // namespace

TEST_CASE("parseTable reads a plain csv") {
    FeatureTable t = parseTable("a,b,c\n1,2,3\n4,5,6\n");
    CHECK(t.nRows() == 2);
    CHECK(t.nCols() == 3);
    CHECK(t.names == std::vector<std::string>{"a", "b", "c"});
    CHECK(t.cols[0] == std::vector<double>{1.0, 4.0});
    CHECK(t.cols[2] == std::vector<double>{3.0, 6.0});
}

TEST_CASE("parseTable accepts quoted headers and scientific notation") {
    FeatureTable t = parseTable("\"Alpha Ratio\",\"x\"\n1e-3,-2.5E2\n");
    CHECK(t.names[0] == "Alpha Ratio");
    CHECK(t.cols[0][0] == doctest::Approx(1e-3));
    CHECK(t.cols[1][0] == doctest::Approx(-250.0));
}

TEST_CASE("parseTable rejects malformed input") {
    CHECK(idOf([] { parseTable("a,a\n1,2\n"); }) == "duplicate_header");
    CHECK(idOf([] { parseTable("a,b\n1\n"); }) == "ragged_row");
    CHECK(idOf([] { parseTable("a,b\n1,2,3\n"); }) == "ragged_row");
    CHECK(idOf([] { parseTable("a,b\n1,zebra\n"); }) == "non_numeric_cell");
    CHECK(idOf([] { parseTable("a,b\n1,nan\n"); }) == "non_numeric_cell");
    CHECK(idOf([] { parseTable(""); }) == "empty_table");
    CHECK(idOf([] { parseTable("a,b\n"); }) == "empty_table");
}

TEST_CASE("schema enforcement names the first missing column") {
    // A feature file with 17 of the 18 action units: AU45 was dropped.
    std::vector<std::string> schema = microSchema();
    std::ostringstream header;
    bool first = true;
    for (const std::string& name : schema) {
        if (name == "AU45") continue;
        if (!first) header << ",";
        header << name;
        first = false;
    }
    std::string text = header.str() + "\n";
    for (std::size_t i = 0; i < schema.size() - 1; ++i) {
        text += (i ? ",0" : "0");
    }
    text += "\n";
    try {
        parseTable(text, schema);
        FAIL("expected missing_column");
    } catch (const Error& e) {
        CHECK(e.id() == "missing_column");
        CHECK(std::string(e.what()).find("AU45") != std::string::npos);
    }
    // Extra columns beyond the schema are fine.
    FeatureTable t = parseTable("a,b,extra\n1,2,3\n", {"a", "b"});
    CHECK(t.nCols() == 3);
}

TEST_CASE("save and load round-trip preserves names and values") {
    FeatureTable t;
    t.names = {"x", "Alpha Ratio", "y"};
    t.cols = {{0.1, -3.25, 1e-17}, {2.0, 5.5, -0.0}, {1.0 / 3.0, 7.0, 123456.789}};
    std::string path = "roundtrip_test.csv";
    saveTable(t, path);
    FeatureTable back = loadTable(path);
    std::remove(path.c_str());
    REQUIRE(back.names == t.names);
    REQUIRE(back.nRows() == t.nRows());
    for (std::size_t c = 0; c < t.nCols(); ++c) {
        for (std::size_t r = 0; r < t.nRows(); ++r) {
            CHECK(back.cols[c][r] == doctest::Approx(t.cols[c][r]).epsilon(1e-12));
        }
    }
}

TEST_CASE("loadTable on a missing path says file_not_found") {
    CHECK(idOf([] { loadTable("no_such_file_here.csv"); }) == "file_not_found");
}

TEST_CASE("standardize matches hand-computed z-scores") {
    FeatureTable t;
    t.names = {"v"};
    t.cols = {{10.0, 20.0, 30.0, 40.0}};
    FeatureTable z = standardize(t);
    // mean 25, sd sqrt(500/3) with the n-1 denominator
    CHECK(z.cols[0][0] == doctest::Approx(-1.1618950038622251).epsilon(1e-12));
    CHECK(z.cols[0][1] == doctest::Approx(-0.3872983346207417).epsilon(1e-12));
    CHECK(z.cols[0][2] == doctest::Approx(0.3872983346207417).epsilon(1e-12));
    CHECK(z.cols[0][3] == doctest::Approx(1.1618950038622251).epsilon(1e-12));
}

TEST_CASE("standardize is idempotent") {
    FeatureTable t;
    t.names = {"a", "b"};
    t.cols = {{1.0, 2.0, 4.0, 8.0, 16.0}, {-3.0, 0.0, 1.0, 2.0, 2.5}};
    FeatureTable once = standardize(t);
    FeatureTable twice = standardize(once);
    for (std::size_t c = 0; c < once.nCols(); ++c) {
        for (std::size_t r = 0; r < once.nRows(); ++r) {
            CHECK(std::abs(twice.cols[c][r] - once.cols[c][r]) < 1e-10);
        }
    }
}

TEST_CASE("standardize rejects constant columns") {
    FeatureTable t;
    t.names = {"c"};
    t.cols = {{5.0, 5.0, 5.0}};
    CHECK(idOf([&] { standardize(t); }) == "zero_variance_column");
}

TEST_CASE("columnIndex and hasColumn") {
    FeatureTable t = parseTable("a,b\n1,2\n");
    CHECK(t.columnIndex("b") == 1);
    CHECK(t.hasColumn("a"));
    CHECK(!t.hasColumn("z"));
    CHECK(idOf([&] { t.columnIndex("z"); }) == "unknown_column");
}

TEST_CASE("built-in schemas have the documented shapes") {
    const auto& micro = microSchema();
    const auto& macro_ = macroSchema();
    CHECK(micro.size() == 25);
    CHECK(macro_.size() == 30);
    // 18 facial action units in both
    for (const auto* au : {"AU1", "AU12", "AU45"}) {
        CHECK(std::count(micro.begin(), micro.end(), au) == 1);
        CHECK(std::count(macro_.begin(), macro_.end(), au) == 1);
    }
    // Pitch and durations exist only at micro level
    for (const auto* name : {"Pitch", "Speech Duration", "Silence Duration"}) {
        CHECK(std::count(micro.begin(), micro.end(), name) == 1);
        CHECK(std::count(macro_.begin(), macro_.end(), name) == 0);
    }
    // Questionnaire subscales exist only at macro level
    for (const auto* name : {"warmth", "competence", "discomfort"}) {
        CHECK(std::count(macro_.begin(), macro_.end(), name) == 1);
        CHECK(std::count(micro.begin(), micro.end(), name) == 0);
    }
}

TEST_CASE("resolveSchema handles names and files") {
    CHECK(resolveSchema("micro") == microSchema());
    CHECK(resolveSchema("macro") == macroSchema());
    std::string path = "schema_test.txt";
    {
        std::ofstream out(path);
        out << "one\ntwo\n\nthree\n";
    }
    CHECK(resolveSchema(path) == std::vector<std::string>{"one", "two", "three"});
    std::remove(path.c_str());
    CHECK(idOf([] { resolveSchema("not-a-real-schema"); }) == "file_not_found");
}
