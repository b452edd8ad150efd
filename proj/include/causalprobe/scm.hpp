#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "causalprobe/feature_table.hpp"
#include "causalprobe/graph.hpp"

namespace causalprobe {

enum class Mechanism { Linear, QuadraticMix };

std::string mechanismName(Mechanism m);
Mechanism mechanismFromName(const std::string& s);

struct Scm {
    Dag dag;                  // latents come first and have no parents
    Eigen::MatrixXd weights;  // weights(i, j) is the coefficient on edge i -> j
    std::vector<double> noiseStd;  // per node
    Mechanism mechanism = Mechanism::Linear;
};

// Random ground-truth model. Latent nodes are exogenous; generation retries
// (up to an internal cap) until every latent has at least two observed
// descendants, since anything less cannot act as a confounder.
Scm randomScm(int nObserved, int nLatent, double edgeProb, std::uint64_t seed,
              Mechanism mechanism = Mechanism::Linear);

// Ancestral sampling; returns only the observed columns.
FeatureTable sampleData(const Scm& scm, int nRows, std::uint64_t seed);

struct GraphScore {
    int skeletonTp = 0;
    int skeletonFp = 0;
    int skeletonFn = 0;
    double precision = 1.0;
    double recall = 1.0;
    double f1 = 1.0;
    int arrowheadsCorrect = 0;
    int arrowheadsTotal = 0;
    double arrowheadAccuracy = 1.0;
};

// Scores an estimated PAG against the ground truth. The reference skeleton
// comes from running the discovery pipeline with an oracle test on the true
// graph under unbounded conditioning; an arrowhead at y on x *-> y counts
// as correct when y is not an ancestor of x in the true graph. The node
// sets of the estimate and the truth's observed part must coincide.
GraphScore scoreGraph(const Pag& estimated, const Scm& truth);

std::string scmToJson(const Scm& scm);
Scm scmFromJson(const std::string& text);
std::string graphScoreToJson(const GraphScore& score);

}  // namespace causalprobe
