#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace causalprobe {

// Rectangular numeric table, column-major. Invariants after ingestion:
// unique column names, all cells finite, every column the same length.
struct FeatureTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;

    std::size_t nRows() const { return cols.empty() ? 0 : cols.front().size(); }
    std::size_t nCols() const { return cols.size(); }

    // Index of a named column; throws ValidationError("unknown_column") on miss.
    std::size_t columnIndex(const std::string& name) const;
    bool hasColumn(const std::string& name) const;
};

// CSV dialect: comma separator, "." decimal point, one header line, optional
// double quotes around header cells. If `schema` is nonempty every schema
// column must be present (extra columns are allowed).
FeatureTable loadTable(const std::string& path,
                       const std::vector<std::string>& schema = {});
FeatureTable parseTable(const std::string& text,
                        const std::vector<std::string>& schema = {});

// Writes CSV that loadTable round-trips: names bit-identical, values within
// 1e-12 (in fact exactly, via shortest-exact formatting).
void saveTable(const FeatureTable& table, const std::string& path);
std::string renderTable(const FeatureTable& table);

// Per-column z-scores with the n-1 variance denominator.
FeatureTable standardize(const FeatureTable& table);

// Built-in feature schemas: 18 facial action units, 7 audio features (3 of
// them micro-only), and the questionnaire subscales that exist only at macro
// level.
const std::vector<std::string>& microSchema();
const std::vector<std::string>& macroSchema();

// Returns a named built-in schema ("micro" / "macro"), or reads one column
// name per line from a file path.
std::vector<std::string> resolveSchema(const std::string& nameOrPath);

}  // namespace causalprobe
