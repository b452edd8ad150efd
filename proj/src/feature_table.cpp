#include "causalprobe/feature_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "causalprobe/errors.hpp"

namespace causalprobe {

namespace {

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string stripHeaderCell(std::string cell) {
    if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
        cell = cell.substr(1, cell.size() - 2);
    }
    return cell;
}

double parseCell(const std::string& cell, std::size_t row, std::size_t col) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    // Leading '+' is not covered by from_chars; nobody writes it, reject it.
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ValidationError(
            "non_numeric_cell",
            "non-numeric cell at row " + std::to_string(row) + ", column " +
                std::to_string(col) + ": '" + cell + "'");
    }
    return value;
}

std::vector<std::string> fauNames() {
    return {"AU1",  "AU2",  "AU4",  "AU5",  "AU6",  "AU7",
            "AU9",  "AU10", "AU12", "AU14", "AU15", "AU17",
            "AU20", "AU23", "AU25", "AU26", "AU28", "AU45"};
}

}  // namespace

std::size_t FeatureTable::columnIndex(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw ValidationError("unknown_column", "no column named '" + name + "'");
}

bool FeatureTable::hasColumn(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

FeatureTable parseTable(const std::string& text,
                        const std::vector<std::string>& schema) {
    std::istringstream in(text);
    std::string line;
    FeatureTable table;

    bool haveHeader = false;
    std::size_t dataRow = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!haveHeader) {
            if (line.empty()) continue;  // tolerate leading blank lines
            for (const std::string& cell : splitCsvLine(line)) {
                table.names.push_back(stripHeaderCell(cell));
            }
            std::unordered_set<std::string> seen;
            for (const std::string& name : table.names) {
                if (!seen.insert(name).second) {
                    throw ValidationError("duplicate_header",
                                          "duplicate column name '" + name + "'");
                }
            }
            table.cols.assign(table.names.size(), {});
            haveHeader = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cells = splitCsvLine(line);
        if (cells.size() != table.names.size()) {
            throw ValidationError(
                "ragged_row", "row " + std::to_string(dataRow) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(table.names.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            table.cols[c].push_back(parseCell(cells[c], dataRow, c));
        }
        ++dataRow;
    }

    if (!haveHeader || table.names.empty() || dataRow == 0) {
        throw ValidationError("empty_table", "table has no header or no data rows");
    }

    for (const std::string& want : schema) {
        if (!table.hasColumn(want)) {
            throw ValidationError("missing_column",
                                  "schema column '" + want + "' not in table");
        }
    }
    return table;
}

FeatureTable loadTable(const std::string& path,
                       const std::vector<std::string>& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("file_not_found", "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseTable(buf.str(), schema);
}

std::string renderTable(const FeatureTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        if (c) out << ',';
        out << table.names[c];
    }
    out << '\n';
    char buf[40];
    for (std::size_t r = 0; r < table.nRows(); ++r) {
        for (std::size_t c = 0; c < table.nCols(); ++c) {
            if (c) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", table.cols[c][r]);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

void saveTable(const FeatureTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("file_not_writable", "cannot write '" + path + "'");
    }
    out << renderTable(table);
}

FeatureTable standardize(const FeatureTable& table) {
    if (table.nRows() == 0) {
        throw ValidationError("empty_table", "cannot standardize an empty table");
    }
    FeatureTable out;
    out.names = table.names;
    out.cols.reserve(table.nCols());
    const double n = static_cast<double>(table.nRows());
    for (std::size_t c = 0; c < table.nCols(); ++c) {
        const std::vector<double>& col = table.cols[c];
        double m = 0.0;
        for (double v : col) m += v;
        m /= n;
        double ss = 0.0;
        for (double v : col) ss += (v - m) * (v - m);
        double var = (table.nRows() > 1) ? ss / (n - 1.0) : 0.0;
        if (var <= 0.0) {
            throw ValidationError("zero_variance_column",
                                  "column '" + table.names[c] + "' has zero variance");
        }
        double sd = std::sqrt(var);
        std::vector<double> z(col.size());
        for (std::size_t r = 0; r < col.size(); ++r) z[r] = (col[r] - m) / sd;
        out.cols.push_back(std::move(z));
    }
    return out;
}

const std::vector<std::string>& microSchema() {
    static const std::vector<std::string> kSchema = [] {
        std::vector<std::string> s = fauNames();
        for (const char* a : {"Pitch", "Loudness", "Alpha Ratio", "Hammerberg index",
                              "Spectral Flux", "Speech Duration", "Silence Duration"}) {
            s.push_back(a);
        }
        return s;
    }();
    return kSchema;
}

const std::vector<std::string>& macroSchema() {
    static const std::vector<std::string> kSchema = [] {
        std::vector<std::string> s = fauNames();
        // Pitch and the duration features exist only at micro level.
        for (const char* a : {"Loudness", "Alpha Ratio", "Hammerberg index",
                              "Spectral Flux"}) {
            s.push_back(a);
        }
        for (const char* q : {"positive", "negative", "warmth", "competence",
                              "discomfort", "task", "goal", "bond"}) {
            s.push_back(q);
        }
        return s;
    }();
    return kSchema;
}

std::vector<std::string> resolveSchema(const std::string& nameOrPath) {
    if (nameOrPath == "micro") return microSchema();
    if (nameOrPath == "macro") return macroSchema();
    std::ifstream in(nameOrPath);
    if (!in) {
        throw ValidationError("file_not_found",
                              "schema '" + nameOrPath + "' is neither a built-in "
                              "name nor a readable file");
    }
    std::vector<std::string> schema;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) schema.push_back(line);
    }
    if (schema.empty()) {
        throw ValidationError("empty_table", "schema file '" + nameOrPath + "' is empty");
    }
    return schema;
}

}  // namespace causalprobe
