#include "causalprobe/ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <json.hpp>

#include "causalprobe/errors.hpp"
#include "causalprobe/graph_io.hpp"
#include "causalprobe/stats_util.hpp"

namespace causalprobe {

void MarkTally::add(Mark m) {
    switch (m) {
        case Mark::Tail: ++tail; break;
        case Mark::Arrow: ++arrow; break;
        case Mark::Circle: ++circle; break;
    }
}

Mark MarkTally::winner() const {
    int best = std::max({tail, arrow, circle});
    int leaders = (tail == best) + (arrow == best) + (circle == best);
    if (leaders > 1) return Mark::Circle;
    if (tail == best) return Mark::Tail;
    if (arrow == best) return Mark::Arrow;
    return Mark::Circle;
}

std::vector<int> subsampleRows(int nRows, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ValidationError("bad_fraction", "subsample fraction must lie in (0, 1]");
    }
    int k = static_cast<int>(fraction * nRows);
    if (k < 1) {
        throw ValidationError("empty_sample", "subsample keeps no rows");
    }
    std::vector<int> idx(nRows);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(boundedDraw(rng(), static_cast<std::uint64_t>(nRows - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

EnsembleResult runEnsemble(const kernels::Matrix& data,
                           const std::vector<std::string>& vars,
                           const TestFactory& factory, const EnsembleParams& params) {
    if (params.nRuns < 1) {
        throw ValidationError("bad_run_count", "ensemble needs at least one run");
    }
    if (!(params.edgeThreshold > 0.0 && params.edgeThreshold <= 1.0)) {
        throw ValidationError("bad_threshold", "edge threshold must lie in (0, 1]");
    }
    if (data.cols() != static_cast<Eigen::Index>(vars.size())) {
        throw ValidationError("bad_argument",
                              "data has " + std::to_string(data.cols()) +
                                  " columns for " + std::to_string(vars.size()) +
                                  " variables");
    }

    EnsembleResult result;
    result.runs.resize(params.nRuns);

    // One slot per run; the aggregation below reads them in index order, so
    // the schedule cannot influence the outcome.
    #pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < params.nRuns; ++r) {
        EnsembleRun& run = result.runs[r];
        run.index = r;
        try {
            std::uint64_t runSeed = params.seed + static_cast<std::uint64_t>(r);
            std::vector<int> rows = subsampleRows(static_cast<int>(data.rows()),
                                                  params.subsampleFraction, runSeed);
            kernels::Matrix sub(rows.size(), data.cols());
            for (std::size_t i = 0; i < rows.size(); ++i) sub.row(i) = data.row(rows[i]);
            auto test = factory(sub, runSeed);
            run.pag = runFci(*test, vars, params.fci).pag;
            run.ok = true;
        } catch (const Error& e) {
            run.error = e.id() + ": " + e.what();
        } catch (const std::exception& e) {
            run.error = std::string("error: ") + e.what();
        }
    }

    for (const EnsembleRun& run : result.runs) {
        if (!run.ok) {
            ++result.nFailed;
            continue;
        }
        ++result.nCompleted;
        for (auto [a, b] : run.pag.edges()) {
            EdgeStats& stats = result.edges[{a, b}];
            ++stats.presentIn;
            stats.atA.add(run.pag.mark(b, a));
            stats.atB.add(run.pag.mark(a, b));
        }
    }
    if (result.nCompleted == 0) {
        throw NumericError("all_runs_failed",
                           "every ensemble run failed; first error: " +
                               (result.runs.empty() ? std::string("none")
                                                    : result.runs.front().error));
    }

    result.consensus = Pag(vars);
    for (auto& [pair, stats] : result.edges) {
        stats.support = static_cast<double>(stats.presentIn) / result.nCompleted;
        if (stats.support > params.edgeThreshold) {
            result.consensus.addEdge(pair.first, pair.second, stats.atA.winner(),
                                     stats.atB.winner());
        }
    }
    return result;
}

std::string ensembleResultToJson(const EnsembleResult& result) {
    nlohmann::json j;
    j["n_runs"] = result.runs.size();
    j["n_completed"] = result.nCompleted;
    j["n_failed"] = result.nFailed;
    j["consensus"] = nlohmann::json::parse(pagToJson(result.consensus));

    j["edge_support"] = nlohmann::json::array();
    for (const auto& [pair, stats] : result.edges) {
        auto tallyJson = [&](const MarkTally& t) {
            double n = stats.presentIn;
            return nlohmann::json{{"tail", t.tail / n},
                                  {"arrow", t.arrow / n},
                                  {"circle", t.circle / n}};
        };
        j["edge_support"].push_back(
            {{"a", result.consensus.name(pair.first)},
             {"b", result.consensus.name(pair.second)},
             {"present_in", stats.presentIn},
             {"support", stats.support},
             {"mark_support_a", tallyJson(stats.atA)},
             {"mark_support_b", tallyJson(stats.atB)},
             {"in_consensus", result.consensus.adjacent(pair.first, pair.second)}});
    }
    j["runs"] = nlohmann::json::array();
    for (const EnsembleRun& run : result.runs) {
        nlohmann::json rj{{"index", run.index}, {"ok", run.ok}};
        if (!run.ok) rj["error"] = run.error;
        j["runs"].push_back(std::move(rj));
    }
    return j.dump(2);
}

}  // namespace causalprobe
