#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "causalprobe/ci_tests.hpp"
#include "causalprobe/fci.hpp"
#include "causalprobe/kernels.hpp"

namespace causalprobe {

// Builds the CI test for one ensemble run; receives the subsampled data
// (rows of the full matrix, columns in variable order) and the run seed.
using TestFactory =
    std::function<std::unique_ptr<CiTest>(const kernels::Matrix&, std::uint64_t)>;

struct EnsembleParams {
    int nRuns = 30;
    double subsampleFraction = 0.8;
    double edgeThreshold = 0.5;  // an edge needs support strictly above this
    std::uint64_t seed = 0;
    FciParams fci;
};

struct EnsembleRun {
    int index = 0;
    bool ok = false;
    std::string error;  // machine id plus message when the run failed
    Pag pag;
};

struct MarkTally {
    int tail = 0;
    int arrow = 0;
    int circle = 0;

    void add(Mark m);
    // Plurality mark; any tie for the lead falls back to Circle.
    Mark winner() const;
};

struct EdgeStats {
    int presentIn = 0;   // completed runs containing the edge
    double support = 0.0;  // presentIn / completed
    MarkTally atA;       // endpoint tallies with a < b, over runs with the edge
    MarkTally atB;
};

struct EnsembleResult {
    Pag consensus;
    int nCompleted = 0;
    int nFailed = 0;
    std::vector<EnsembleRun> runs;
    std::map<std::pair<int, int>, EdgeStats> edges;  // every pair seen in any run
};

// Row indices for one run: the first floor(fraction * nRows) entries of a
// seeded Fisher-Yates pass, sorted ascending. Sampling is without
// replacement; run r of an ensemble uses seed + r.
std::vector<int> subsampleRows(int nRows, double fraction, std::uint64_t seed);

// Runs FCI params.nRuns times on row subsamples (in parallel when OpenMP has
// threads to give), then votes: an edge enters the consensus when a strict
// majority of completed runs contains it, and each endpoint takes the
// plurality mark among those runs. Failed runs are recorded and excluded
// from the denominators. Throws when every run fails.
EnsembleResult runEnsemble(const kernels::Matrix& data,
                           const std::vector<std::string>& vars,
                           const TestFactory& factory, const EnsembleParams& params);

std::string ensembleResultToJson(const EnsembleResult& result);

}  // namespace causalprobe
