#include "causalprobe/scm.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "causalprobe/ci_tests.hpp"
#include "causalprobe/errors.hpp"
#include "causalprobe/fci.hpp"

namespace causalprobe {

namespace {

constexpr int kMaxGenerationAttempts = 1000;

bool latentIsConfounder(const Dag& dag, int latent) {
    int observedDescendants = 0;
    int n = static_cast<int>(dag.nNodes());
    for (int v = 0; v < n; ++v) {
        if (!dag.isLatent(v) && dag.isAncestor(latent, v)) ++observedDescendants;
    }
    return observedDescendants >= 2;
}

}  // namespace

std::string mechanismName(Mechanism m) {
    return m == Mechanism::Linear ? "linear" : "quadratic_mix";
}

Mechanism mechanismFromName(const std::string& s) {
    if (s == "linear") return Mechanism::Linear;
    if (s == "quadratic_mix") return Mechanism::QuadraticMix;
    throw ValidationError("bad_mechanism",
                          "mechanism must be linear or quadratic_mix, got '" + s + "'");
}

Scm randomScm(int nObserved, int nLatent, double edgeProb, std::uint64_t seed,
              Mechanism mechanism) {
    if (nObserved < 2) {
        throw ValidationError("bad_node_count", "need at least two observed variables");
    }
    if (nLatent < 0) {
        throw ValidationError("bad_node_count", "latent count cannot be negative");
    }
    if (!(edgeProb > 0.0 && edgeProb < 1.0)) {
        throw ValidationError("bad_edge_prob", "edge probability must lie in (0, 1)");
    }

    int n = nLatent + nObserved;
    std::vector<std::string> names(n);
    std::vector<bool> latent(n, false);
    for (int i = 0; i < nLatent; ++i) {
        names[i] = "L" + std::to_string(i + 1);
        latent[i] = true;
    }
    for (int i = 0; i < nObserved; ++i) {
        names[nLatent + i] = "X" + std::to_string(i + 1);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> magnitude(0.5, 2.0);

    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        Scm scm;
        scm.dag = Dag(names, latent);
        scm.weights = Eigen::MatrixXd::Zero(n, n);
        scm.noiseStd.assign(n, 1.0);
        scm.mechanism = mechanism;
        // Node index order is a topological order by construction; latents
        // come first, so they never receive an edge.
        for (int i = 0; i < n; ++i) {
            for (int j = std::max(i + 1, nLatent); j < n; ++j) {
                if (unit(rng) >= edgeProb) continue;
                double w = magnitude(rng);
                if (unit(rng) < 0.5) w = -w;
                scm.dag.addEdge(i, j);
                scm.weights(i, j) = w;
            }
        }
        bool ok = true;
        for (int l = 0; l < nLatent && ok; ++l) ok = latentIsConfounder(scm.dag, l);
        if (ok) return scm;
    }
    throw NumericError("generation_failed",
                       "could not place every latent as a confounder of two or more "
                       "observed variables within " +
                           std::to_string(kMaxGenerationAttempts) + " attempts");
}

FeatureTable sampleData(const Scm& scm, int nRows, std::uint64_t seed) {
    if (nRows < 1) throw ValidationError("bad_row_count", "need at least one row");
    int n = static_cast<int>(scm.dag.nNodes());
    if (scm.noiseStd.size() != static_cast<std::size_t>(n)) {
        throw ValidationError("bad_noise_std",
                              "noise_std must give one value per node");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    Eigen::MatrixXd values(nRows, n);
    for (int v : scm.dag.topologicalOrder()) {
        double sd = scm.noiseStd[v];
        for (int r = 0; r < nRows; ++r) values(r, v) = sd * noise(rng);
        for (int p : scm.dag.parents(v)) {
            double w = scm.weights(p, v);
            values.col(v) += w * values.col(p);
            if (scm.mechanism == Mechanism::QuadraticMix) {
                // Centered square keeps the contribution mean-zero under
                // standard normal parents.
                values.col(v) +=
                    0.5 * w * (values.col(p).array().square() - 1.0).matrix();
            }
        }
    }

    FeatureTable table;
    for (int v : scm.dag.observedNodes()) {
        table.names.push_back(scm.dag.name(v));
        std::vector<double> col(nRows);
        for (int r = 0; r < nRows; ++r) col[r] = values(r, v);
        table.cols.push_back(std::move(col));
    }
    return table;
}

GraphScore scoreGraph(const Pag& estimated, const Scm& truth) {
    const Dag& dag = truth.dag;
    std::vector<int> observed = dag.observedNodes();
    int m = static_cast<int>(observed.size());

    std::vector<std::string> observedNames;
    std::unordered_map<std::string, int> nameToSlot;
    for (int i = 0; i < m; ++i) {
        observedNames.push_back(dag.name(observed[i]));
        nameToSlot[observedNames.back()] = i;
    }

    // The estimate must cover exactly the observed variables of the truth.
    int en = static_cast<int>(estimated.nNodes());
    std::vector<int> toTruth(en);   // estimate index -> truth node index
    std::vector<int> toSlot(en);    // estimate index -> observed slot
    std::vector<bool> seen(m, false);
    bool mismatch = en != m;
    for (int v = 0; v < en && !mismatch; ++v) {
        auto it = nameToSlot.find(estimated.name(v));
        if (it == nameToSlot.end() || seen[it->second]) {
            mismatch = true;
            break;
        }
        seen[it->second] = true;
        toSlot[v] = it->second;
        toTruth[v] = observed[it->second];
    }
    if (mismatch) {
        throw ValidationError("node_mismatch",
                              "estimated graph must have exactly the observed "
                              "nodes of the truth");
    }

    // Reference skeleton: what discovery itself recovers when handed a
    // d-separation oracle on the true graph with no conditioning cap.
    OracleTest oracle(dag, observedNames);
    FciParams oracleParams;
    oracleParams.maxCondSize = kUnboundedCondSize;
    Pag truthPag = runFci(oracle, observedNames, oracleParams).pag;

    GraphScore score;
    int nTrueEdges = static_cast<int>(truthPag.nEdges());
    for (auto [a, b] : estimated.edges()) {
        if (truthPag.adjacent(toSlot[a], toSlot[b])) {
            ++score.skeletonTp;
        } else {
            ++score.skeletonFp;
        }
    }
    score.skeletonFn = nTrueEdges - score.skeletonTp;

    // With nothing predicted, precision is vacuously perfect; likewise for
    // recall with nothing to find.
    int predicted = score.skeletonTp + score.skeletonFp;
    score.precision =
        predicted > 0 ? static_cast<double>(score.skeletonTp) / predicted : 1.0;
    score.recall =
        nTrueEdges > 0 ? static_cast<double>(score.skeletonTp) / nTrueEdges : 1.0;
    score.f1 = (score.precision + score.recall) > 0.0
                   ? 2.0 * score.precision * score.recall /
                         (score.precision + score.recall)
                   : 0.0;

    // Every arrowhead x *-> y claims y is not an ancestor of x.
    for (auto [a, b] : estimated.edges()) {
        int x = toTruth[a], y = toTruth[b];
        if (estimated.mark(a, b) == Mark::Arrow) {
            ++score.arrowheadsTotal;
            if (!dag.isAncestor(y, x)) ++score.arrowheadsCorrect;
        }
        if (estimated.mark(b, a) == Mark::Arrow) {
            ++score.arrowheadsTotal;
            if (!dag.isAncestor(x, y)) ++score.arrowheadsCorrect;
        }
    }
    score.arrowheadAccuracy =
        score.arrowheadsTotal > 0
            ? static_cast<double>(score.arrowheadsCorrect) / score.arrowheadsTotal
            : 1.0;
    return score;
}

std::string scmToJson(const Scm& scm) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (std::size_t v = 0; v < scm.dag.nNodes(); ++v) {
        j["nodes"].push_back({{"name", scm.dag.name(static_cast<int>(v))},
                              {"latent", scm.dag.isLatent(static_cast<int>(v))}});
    }
    j["edges"] = nlohmann::json::array();
    for (auto [from, to] : scm.dag.edges()) {
        j["edges"].push_back({{"from", scm.dag.name(from)},
                              {"to", scm.dag.name(to)},
                              {"weight", scm.weights(from, to)}});
    }
    j["noise_std"] = nlohmann::json::object();
    for (std::size_t v = 0; v < scm.noiseStd.size(); ++v) {
        j["noise_std"][scm.dag.name(static_cast<int>(v))] = scm.noiseStd[v];
    }
    j["mechanism"] = mechanismName(scm.mechanism);
    return j.dump(2);
}

Scm scmFromJson(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("bad_json", std::string("truth graph: ") + e.what());
    }
    try {
        std::vector<std::string> names;
        std::vector<bool> latent;
        for (const auto& node : j.at("nodes")) {
            names.push_back(node.at("name").get<std::string>());
            latent.push_back(node.value("latent", false));
        }
        Scm scm;
        scm.dag = Dag(names, latent);
        int n = static_cast<int>(names.size());
        scm.weights = Eigen::MatrixXd::Zero(n, n);
        for (const auto& edge : j.at("edges")) {
            int from = scm.dag.indexOf(edge.at("from").get<std::string>());
            int to = scm.dag.indexOf(edge.at("to").get<std::string>());
            scm.dag.addEdge(from, to);
            scm.weights(from, to) = edge.value("weight", 1.0);
        }
        scm.noiseStd.assign(n, 1.0);
        if (j.contains("noise_std")) {
            const auto& ns = j["noise_std"];
            if (ns.is_number()) {
                scm.noiseStd.assign(n, ns.get<double>());
            } else {
                for (auto it = ns.begin(); it != ns.end(); ++it) {
                    scm.noiseStd[scm.dag.indexOf(it.key())] = it.value().get<double>();
                }
            }
        }
        if (j.contains("mechanism")) {
            scm.mechanism = mechanismFromName(j["mechanism"].get<std::string>());
        }
        return scm;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad_truth_graph",
                              std::string("truth graph: ") + e.what());
    }
}

std::string graphScoreToJson(const GraphScore& score) {
    nlohmann::json j;
    j["skeleton"] = {{"precision", score.precision},
                     {"recall", score.recall},
                     {"f1", score.f1},
                     {"true_positives", score.skeletonTp},
                     {"false_positives", score.skeletonFp},
                     {"false_negatives", score.skeletonFn}};
    j["arrowheads"] = {{"accuracy", score.arrowheadAccuracy},
                       {"correct", score.arrowheadsCorrect},
                       {"total", score.arrowheadsTotal}};
    return j.dump(2);
}

}  // namespace causalprobe
