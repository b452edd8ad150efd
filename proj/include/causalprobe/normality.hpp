#pragma once

#include <string>
#include <vector>

#include "causalprobe/feature_table.hpp"

namespace causalprobe {

struct ShapiroResult {
    double w;
    double p;
};

// Shapiro-Wilk W and p-value via Royston's AS R94 approximation.
// Valid for 3 <= n <= 5000.
ShapiroResult shapiroWilk(std::vector<double> sample);

struct NormalityRow {
    std::string column;
    double w;
    double p;
    bool normal;  // p > alpha
};

struct NormalityReport {
    double alpha;
    std::vector<NormalityRow> rows;
};

// Tests every column of the table, one row per column, in table order.
NormalityReport normalityReport(const FeatureTable& table, double alpha);

std::string normalityReportToJson(const NormalityReport& report);

}  // namespace causalprobe
