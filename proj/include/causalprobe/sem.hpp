#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "causalprobe/feature_table.hpp"

namespace causalprobe {

enum class SemMethod { Ml, Gls };

std::string semMethodName(SemMethod m);
SemMethod semMethodFromName(const std::string& s);

// Structural model description. Text format, one statement per line:
//   latent NAME = ind1 + ind2 + ...     measurement part
//   OUTCOME ~ pred1 + pred2 + ...       regressions
//   A ~~ B                              free covariance
// '#' starts a comment; names may contain spaces, so tokens are trimmed
// around the operators.
struct SemModel {
    struct Path {
        std::string from;
        std::string to;
    };

    std::vector<std::string> latents;  // declaration order
    std::map<std::string, std::vector<std::string>> indicators;
    std::vector<Path> paths;
    std::vector<std::pair<std::string, std::string>> covariances;

    bool isLatent(const std::string& name) const;
};

SemModel parseSemModel(const std::string& text);
SemModel loadSemModel(const std::string& path);

struct SemParameter {
    enum class Kind { Loading, Path, Variance, Covariance };
    Kind kind;
    std::string from;  // loading: latent; path: predictor; (co)variance: first name
    std::string to;    // loading: indicator; path: outcome; covariance: second name
    bool fixed = false;
    double estimate = 0.0;
    double standardized = 0.0;
};

struct FitIndices {
    double chiSquare = 0.0;
    int df = 0;
    double pValue = 1.0;
    double baselineChiSquare = 0.0;
    int baselineDf = 0;
    double cfi = 1.0;
    double tli = 1.0;
    double rmsea = 0.0;
    double cminDf = 0.0;
    bool zeroDf = false;
};

// Incremental and absolute fit measures from the model and baseline
// chi-squares. Saturated models (df 0) take the conventional perfect-fit
// values.
FitIndices fitIndices(double chiModel, int dfModel, double chiBaseline,
                      int dfBaseline, int nObs);

struct SemFit {
    SemMethod method = SemMethod::Ml;
    bool converged = false;
    int iterations = 0;
    double discrepancy = 0.0;  // minimized fit function value
    int nObs = 0;
    int nFreeParams = 0;
    FitIndices indices;
    std::vector<SemParameter> parameters;
    std::vector<std::string> variables;  // observed order of impliedCov
    Eigen::MatrixXd impliedCov;
};

// Covariance-structure estimation in RAM form. The first indicator of every
// latent is fixed to 1 to set the scale; all variances are free, plus the
// declared covariances. Exposed piecewise so tests can probe the implied
// covariance and the analytic gradient directly.
class SemEngine {
public:
    SemEngine(const SemModel& model, const FeatureTable& data);

    const std::vector<std::string>& varOrder() const { return varOrder_; }
    int nFreeParams() const { return static_cast<int>(free_.size()); }
    int degreesOfFreedom() const;
    std::vector<double> startValues() const;

    // Observed-block implied covariance at a parameter point.
    Eigen::MatrixXd impliedCovariance(const std::vector<double>& theta) const;
    double discrepancy(const std::vector<double>& theta, SemMethod m) const;
    std::vector<double> gradient(const std::vector<double>& theta, SemMethod m) const;

    SemFit fit(SemMethod method);

private:
    struct FreeParam {
        SemParameter::Kind kind;
        int i = 0;  // A(i, j) for loading/path; S(i, j) for (co)variance
        int j = 0;
        std::string from;
        std::string to;
        double start = 0.0;
    };

    int nodeIndex(const std::string& name) const;
    void buildRam(const std::vector<double>& theta, Eigen::MatrixXd& a,
                  Eigen::MatrixXd& s) const;
    Eigen::MatrixXd fullImplied(const std::vector<double>& theta,
                                Eigen::MatrixXd* eOut = nullptr) const;

    SemModel model_;
    std::vector<std::string> varOrder_;  // observed, then latents follow
    int p_ = 0;  // observed count
    int m_ = 0;  // total nodes
    std::vector<FreeParam> free_;
    std::vector<std::pair<int, int>> fixedLoadings_;  // A entries pinned to 1
    Eigen::MatrixXd sampleCov_;
    int nObs_ = 0;
};

SemFit fitSem(const SemModel& model, const FeatureTable& data, SemMethod method);

std::string semFitToJson(const SemFit& fit);

}  // namespace causalprobe
