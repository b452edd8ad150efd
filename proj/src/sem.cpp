#include "causalprobe/sem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <json.hpp>

#include "causalprobe/errors.hpp"
#include "causalprobe/stats_util.hpp"

namespace causalprobe {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Keeps empty pieces (a trailing separator yields one) so callers can reject
// them by name instead of silently losing a term.
std::vector<std::string> splitTrim(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void syntaxError(int lineNo, const std::string& why) {
    throw ValidationError("bad_model_syntax",
                          "model line " + std::to_string(lineNo) + ": " + why);
}

}  // namespace

std::string semMethodName(SemMethod m) { return m == SemMethod::Ml ? "ml" : "gls"; }

SemMethod semMethodFromName(const std::string& s) {
    if (s == "ml") return SemMethod::Ml;
    if (s == "gls") return SemMethod::Gls;
    throw ValidationError("bad_method", "estimation method must be ml or gls, got '" + s + "'");
}

bool SemModel::isLatent(const std::string& name) const {
    return std::find(latents.begin(), latents.end(), name) != latents.end();
}

SemModel parseSemModel(const std::string& text) {
    SemModel model;
    std::stringstream ss(text);
    std::string rawLine;
    int lineNo = 0;
    while (std::getline(ss, rawLine)) {
        ++lineNo;
        std::string line = rawLine;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.rfind("latent ", 0) == 0) {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) syntaxError(lineNo, "expected '=' after latent name");
            std::string name = trim(line.substr(7, eq - 7));
            if (name.empty()) syntaxError(lineNo, "empty latent name");
            if (model.isLatent(name)) syntaxError(lineNo, "latent '" + name + "' declared twice");
            std::vector<std::string> inds = splitTrim(line.substr(eq + 1), '+');
            if (inds.size() == 1 && inds[0].empty()) {
                syntaxError(lineNo, "latent '" + name + "' has no indicators");
            }
            for (const std::string& ind : inds) {
                if (ind.empty()) syntaxError(lineNo, "empty indicator name");
            }
            std::set<std::string> seen(inds.begin(), inds.end());
            if (seen.size() != inds.size()) {
                syntaxError(lineNo, "repeated indicator for latent '" + name + "'");
            }
            model.latents.push_back(name);
            model.indicators[name] = std::move(inds);
            continue;
        }

        std::size_t covOp = line.find("~~");
        if (covOp != std::string::npos) {
            std::string a = trim(line.substr(0, covOp));
            std::string b = trim(line.substr(covOp + 2));
            if (a.empty() || b.empty()) syntaxError(lineNo, "covariance needs two names");
            if (a == b) syntaxError(lineNo, "covariance of '" + a + "' with itself");
            model.covariances.emplace_back(a, b);
            continue;
        }

        std::size_t regOp = line.find('~');
        if (regOp != std::string::npos) {
            std::string to = trim(line.substr(0, regOp));
            if (to.empty()) syntaxError(lineNo, "regression needs an outcome");
            std::vector<std::string> preds = splitTrim(line.substr(regOp + 1), '+');
            if (preds.size() == 1 && preds[0].empty()) {
                syntaxError(lineNo, "regression needs a predictor");
            }
            for (const std::string& from : preds) {
                if (from.empty()) syntaxError(lineNo, "empty predictor name");
                if (from == to) syntaxError(lineNo, "'" + to + "' regressed on itself");
                for (const auto& p : model.paths) {
                    if (p.from == from && p.to == to) {
                        syntaxError(lineNo, "path " + from + " -> " + to + " declared twice");
                    }
                }
                model.paths.push_back({from, to});
            }
            continue;
        }

        syntaxError(lineNo, "unrecognized statement '" + line + "'");
    }

    for (const auto& [latent, inds] : model.indicators) {
        for (const std::string& ind : inds) {
            if (model.isLatent(ind)) {
                syntaxError(0, "indicator '" + ind + "' of '" + latent +
                                   "' is itself a latent");
            }
        }
    }
    if (model.latents.empty() && model.paths.empty()) {
        throw ValidationError("bad_model_syntax", "model declares nothing to fit");
    }
    return model;
}

SemModel loadSemModel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("file_not_found", "cannot open model file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parseSemModel(buf.str());
}

FitIndices fitIndices(double chiModel, int dfModel, double chiBaseline, int dfBaseline,
                      int nObs) {
    if (dfModel < 0 || dfBaseline < 0) {
        throw ValidationError("bad_argument", "degrees of freedom cannot be negative");
    }
    if (nObs < 2) throw ValidationError("bad_argument", "fit indices need at least two observations");

    FitIndices out;
    out.chiSquare = chiModel;
    out.df = dfModel;
    out.baselineChiSquare = chiBaseline;
    out.baselineDf = dfBaseline;
    out.zeroDf = dfModel == 0;
    out.pValue = dfModel > 0 ? chiSquareUpperTail(chiModel, dfModel) : 1.0;
    constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
    if (out.zeroDf) {
        // Saturated model: exact fit by construction. The relative indices
        // are undefined and serialize as null; CFI keeps its 1.0 convention.
        out.cfi = 1.0;
        out.tli = kUndefined;
        out.rmsea = kUndefined;
        out.cminDf = kUndefined;
        return out;
    }
    double excess = std::max(chiModel - dfModel, 0.0);
    double denom = std::max({chiBaseline - dfBaseline, chiModel - dfModel, 0.0});
    out.cfi = denom > 0.0 ? 1.0 - excess / denom : 1.0;
    double ratioB = dfBaseline > 0 ? chiBaseline / dfBaseline : 0.0;
    out.tli = dfBaseline > 0 && std::abs(ratioB - 1.0) > 1e-12
                  ? (ratioB - chiModel / dfModel) / (ratioB - 1.0)
                  : kUndefined;
    out.rmsea = std::sqrt(excess / (static_cast<double>(dfModel) * (nObs - 1)));
    out.cminDf = chiModel / dfModel;
    return out;
}

SemEngine::SemEngine(const SemModel& model, const FeatureTable& data) : model_(model) {
    // Observed variables in reading order: indicators first, then structural
    // and covariance names that are not latent.
    auto seeOrdered = [&](const std::string& name) {
        if (model_.isLatent(name)) return;
        if (std::find(varOrder_.begin(), varOrder_.end(), name) == varOrder_.end()) {
            varOrder_.push_back(name);
        }
    };
    for (const std::string& latent : model_.latents) {
        for (const std::string& ind : model_.indicators.at(latent)) seeOrdered(ind);
    }
    for (const auto& path : model_.paths) {
        seeOrdered(path.to);
        seeOrdered(path.from);
    }
    for (const auto& [a, b] : model_.covariances) {
        seeOrdered(a);
        seeOrdered(b);
    }

    for (const std::string& name : varOrder_) {
        if (!data.hasColumn(name)) {
            throw ValidationError("unknown_variable",
                                  "model variable '" + name +
                                      "' is neither a data column nor a declared latent");
        }
    }
    for (const auto& path : model_.paths) {
        for (const std::string& name : {path.from, path.to}) {
            if (!model_.isLatent(name) && !data.hasColumn(name)) {
                throw ValidationError("unknown_variable", "unknown variable '" + name + "'");
            }
        }
    }

    p_ = static_cast<int>(varOrder_.size());
    m_ = p_ + static_cast<int>(model_.latents.size());
    nObs_ = static_cast<int>(data.nRows());
    if (nObs_ <= p_) {
        throw ValidationError("too_few_rows",
                              "need more rows than observed variables, got " +
                                  std::to_string(nObs_) + " rows for " +
                                  std::to_string(p_) + " variables");
    }

    // Sample covariance over the model's observed variables, n-1 denominator.
    Eigen::MatrixXd x(nObs_, p_);
    for (int c = 0; c < p_; ++c) {
        const std::vector<double>& col = data.cols[data.columnIndex(varOrder_[c])];
        for (int r = 0; r < nObs_; ++r) x(r, c) = col[r];
    }
    x.rowwise() -= x.colwise().mean();
    sampleCov_ = (x.transpose() * x) / (nObs_ - 1);

    // Free parameters, in a fixed order: loadings, paths, observed error
    // variances, latent variances, covariances.
    for (const std::string& latent : model_.latents) {
        int latentIdx = nodeIndex(latent);
        const auto& inds = model_.indicators.at(latent);
        for (std::size_t k = 0; k < inds.size(); ++k) {
            int indIdx = nodeIndex(inds[k]);
            if (k == 0) {
                fixedLoadings_.emplace_back(indIdx, latentIdx);
            } else {
                free_.push_back({SemParameter::Kind::Loading, indIdx, latentIdx, latent,
                                 inds[k], 1.0});
            }
        }
    }
    for (const auto& path : model_.paths) {
        free_.push_back({SemParameter::Kind::Path, nodeIndex(path.to),
                         nodeIndex(path.from), path.from, path.to, 0.0});
    }
    for (int i = 0; i < p_; ++i) {
        free_.push_back({SemParameter::Kind::Variance, i, i, varOrder_[i], varOrder_[i],
                         0.5 * sampleCov_(i, i)});
    }
    for (const std::string& latent : model_.latents) {
        int firstInd = nodeIndex(model_.indicators.at(latent).front());
        free_.push_back({SemParameter::Kind::Variance, nodeIndex(latent),
                         nodeIndex(latent), latent, latent,
                         0.5 * sampleCov_(firstInd, firstInd)});
    }
    for (const auto& [a, b] : model_.covariances) {
        free_.push_back(
            {SemParameter::Kind::Covariance, nodeIndex(a), nodeIndex(b), a, b, 0.0});
    }
}

int SemEngine::nodeIndex(const std::string& name) const {
    auto it = std::find(varOrder_.begin(), varOrder_.end(), name);
    if (it != varOrder_.end()) return static_cast<int>(it - varOrder_.begin());
    auto lt = std::find(model_.latents.begin(), model_.latents.end(), name);
    if (lt != model_.latents.end()) {
        return p_ + static_cast<int>(lt - model_.latents.begin());
    }
    throw ValidationError("unknown_variable", "unknown variable '" + name + "'");
}

int SemEngine::degreesOfFreedom() const {
    return p_ * (p_ + 1) / 2 - nFreeParams();
}

std::vector<double> SemEngine::startValues() const {
    std::vector<double> theta(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) theta[k] = free_[k].start;
    return theta;
}

void SemEngine::buildRam(const std::vector<double>& theta, Eigen::MatrixXd& a,
                         Eigen::MatrixXd& s) const {
    a = Eigen::MatrixXd::Zero(m_, m_);
    s = Eigen::MatrixXd::Zero(m_, m_);
    for (auto [i, j] : fixedLoadings_) a(i, j) = 1.0;
    for (std::size_t k = 0; k < free_.size(); ++k) {
        const FreeParam& fp = free_[k];
        double v = theta[k];
        switch (fp.kind) {
            case SemParameter::Kind::Loading:
            case SemParameter::Kind::Path:
                a(fp.i, fp.j) = v;
                break;
            case SemParameter::Kind::Variance:
                s(fp.i, fp.i) = v;
                break;
            case SemParameter::Kind::Covariance:
                s(fp.i, fp.j) = v;
                s(fp.j, fp.i) = v;
                break;
        }
    }
}

Eigen::MatrixXd SemEngine::fullImplied(const std::vector<double>& theta,
                                       Eigen::MatrixXd* eOut) const {
    if (theta.size() != free_.size()) {
        throw ValidationError("bad_argument", "parameter vector has the wrong length");
    }
    Eigen::MatrixXd a, s;
    buildRam(theta, a, s);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(m_, m_) - a);
    if (!lu.isInvertible()) {
        throw NumericError("singular_structure",
                           "I - A is singular; structural part admits no solution");
    }
    Eigen::MatrixXd e = lu.inverse();
    if (eOut) *eOut = e;
    return e * s * e.transpose();
}

Eigen::MatrixXd SemEngine::impliedCovariance(const std::vector<double>& theta) const {
    return fullImplied(theta).topLeftCorner(p_, p_);
}

double SemEngine::discrepancy(const std::vector<double>& theta, SemMethod m) const {
    Eigen::MatrixXd sigma = impliedCovariance(theta);
    if (m == SemMethod::Gls) {
        Eigen::MatrixXd r = sigma - sampleCov_;
        return 0.5 * (r.squaredNorm() + r.diagonal().squaredNorm());
    }
    Eigen::LLT<Eigen::MatrixXd> lltSigma(sigma);
    if (lltSigma.info() != Eigen::Success) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::LLT<Eigen::MatrixXd> lltSample(sampleCov_);
    if (lltSample.info() != Eigen::Success) {
        throw NumericError("covariance_not_positive_definite",
                           "sample covariance matrix is not positive definite");
    }
    auto logDet = [](const Eigen::LLT<Eigen::MatrixXd>& llt) {
        return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    };
    double trace = lltSigma.solve(sampleCov_).trace();
    return logDet(lltSigma) + trace - logDet(lltSample) - p_;
}

std::vector<double> SemEngine::gradient(const std::vector<double>& theta,
                                        SemMethod m) const {
    Eigen::MatrixXd e;
    Eigen::MatrixXd g = fullImplied(theta, &e);
    Eigen::MatrixXd sigma = g.topLeftCorner(p_, p_);

    Eigen::MatrixXd weight;  // gradient is tr(weight * dSigma) for every parameter
    if (m == SemMethod::Gls) {
        Eigen::MatrixXd r = sigma - sampleCov_;
        weight = r;
        weight.diagonal() += r.diagonal();
    } else {
        Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success) {
            throw NumericError("implied_covariance_not_positive_definite",
                               "implied covariance is not positive definite at this point");
        }
        Eigen::MatrixXd sigmaInv = llt.solve(Eigen::MatrixXd::Identity(p_, p_));
        weight = sigmaInv - sigmaInv * sampleCov_ * sigmaInv;
    }

    std::vector<double> grad(free_.size());
    for (std::size_t k = 0; k < free_.size(); ++k) {
        const FreeParam& fp = free_[k];
        switch (fp.kind) {
            case SemParameter::Kind::Loading:
            case SemParameter::Kind::Path: {
                // dSigma = u v^T + v u^T with u = E e_i, v = G e_j.
                Eigen::VectorXd u = e.col(fp.i).head(p_);
                Eigen::VectorXd v = g.col(fp.j).head(p_);
                grad[k] = 2.0 * u.dot(weight * v);
                break;
            }
            case SemParameter::Kind::Variance: {
                Eigen::VectorXd u = e.col(fp.i).head(p_);
                grad[k] = u.dot(weight * u);
                break;
            }
            case SemParameter::Kind::Covariance: {
                Eigen::VectorXd u = e.col(fp.i).head(p_);
                Eigen::VectorXd v = e.col(fp.j).head(p_);
                grad[k] = 2.0 * u.dot(weight * v);
                break;
            }
        }
    }
    return grad;
}

SemFit SemEngine::fit(SemMethod method) {
    constexpr int kMaxIterations = 500;
    constexpr double kGradTol = 1e-6;
    constexpr double kArmijo = 1e-4;

    // Identification is a fitting concern; the implied covariance is a
    // well-defined function of theta either way.
    if (degreesOfFreedom() < 0) {
        throw NumericError("unidentified_model",
                           "model has " + std::to_string(nFreeParams()) +
                               " free parameters but only " +
                               std::to_string(p_ * (p_ + 1) / 2) +
                               " distinct covariance moments");
    }

    {
        Eigen::LLT<Eigen::MatrixXd> llt(sampleCov_);
        if (llt.info() != Eigen::Success) {
            throw NumericError("covariance_not_positive_definite",
                               "sample covariance matrix is not positive definite");
        }
    }

    int nFree = nFreeParams();
    Eigen::VectorXd theta = Eigen::Map<const Eigen::VectorXd>(startValues().data(), nFree);

    auto value = [&](const Eigen::VectorXd& t) {
        std::vector<double> v(t.data(), t.data() + t.size());
        try {
            return discrepancy(v, method);
        } catch (const NumericError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    auto grad = [&](const Eigen::VectorXd& t) {
        std::vector<double> v(t.data(), t.data() + t.size());
        std::vector<double> gv = gradient(v, method);
        return Eigen::Map<const Eigen::VectorXd>(gv.data(), nFree).eval();
    };

    double f = value(theta);
    if (!std::isfinite(f)) {
        throw NumericError("bad_start", "fit function is not finite at the start values");
    }
    Eigen::VectorXd gr = grad(theta);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(nFree, nFree);  // inverse Hessian
    bool converged = gr.lpNorm<Eigen::Infinity>() < kGradTol;
    int iter = 0;

    while (!converged && iter < kMaxIterations) {
        ++iter;
        Eigen::VectorXd dir = -(h * gr);
        if (dir.dot(gr) >= 0.0) {  // not a descent direction; restart
            h.setIdentity();
            dir = -gr;
        }
        double slope = dir.dot(gr);
        double step = 1.0;
        Eigen::VectorXd next;
        double fNext = std::numeric_limits<double>::infinity();
        while (step > 1e-14) {
            next = theta + step * dir;
            fNext = value(next);
            if (fNext <= f + kArmijo * step * slope) break;
            step *= 0.5;
        }
        if (step <= 1e-14) break;  // line search stalled

        Eigen::VectorXd grNext = grad(next);
        Eigen::VectorXd s = next - theta;
        Eigen::VectorXd y = grNext - gr;
        double sy = s.dot(y);
        if (sy > 1e-12) {
            if (iter == 1) h *= sy / y.squaredNorm();
            Eigen::MatrixXd left =
                Eigen::MatrixXd::Identity(nFree, nFree) - (s * y.transpose()) / sy;
            h = left * h * left.transpose() + (s * s.transpose()) / sy;
        }
        theta = next;
        f = fNext;
        gr = grNext;
        converged = gr.lpNorm<Eigen::Infinity>() < kGradTol;
    }

    if (!converged) {
        throw NumericError("non_convergence",
                           "optimizer did not reach the gradient tolerance within " +
                               std::to_string(kMaxIterations) + " iterations");
    }

    std::vector<double> thetaVec(theta.data(), theta.data() + nFree);
    SemFit out;
    out.method = method;
    out.converged = true;
    out.iterations = iter;
    out.discrepancy = f;
    out.nObs = nObs_;
    out.nFreeParams = nFree;
    out.variables = varOrder_;

    Eigen::MatrixXd gFull = fullImplied(thetaVec);
    out.impliedCov = gFull.topLeftCorner(p_, p_);

    auto impliedSd = [&](int node) {
        double v = gFull(node, node);
        return v > 0.0 ? std::sqrt(v) : 0.0;
    };
    auto standardizedOf = [&](const FreeParam& fp, double est) {
        switch (fp.kind) {
            case SemParameter::Kind::Loading:
            case SemParameter::Kind::Path: {
                double sdFrom = impliedSd(fp.j);
                double sdTo = impliedSd(fp.i);
                return sdTo > 0.0 ? est * sdFrom / sdTo : 0.0;
            }
            case SemParameter::Kind::Variance: {
                double v = gFull(fp.i, fp.i);
                return v > 0.0 ? est / v : 0.0;
            }
            case SemParameter::Kind::Covariance: {
                double d = impliedSd(fp.i) * impliedSd(fp.j);
                return d > 0.0 ? est / d : 0.0;
            }
        }
        return 0.0;
    };

    // Fixed unit loadings first so the report shows complete measurement
    // blocks, then the free parameters in estimation order.
    for (const std::string& latent : model_.latents) {
        SemParameter sp;
        sp.kind = SemParameter::Kind::Loading;
        sp.from = latent;
        sp.to = model_.indicators.at(latent).front();
        sp.fixed = true;
        sp.estimate = 1.0;
        FreeParam fp{SemParameter::Kind::Loading, nodeIndex(sp.to), nodeIndex(latent),
                     sp.from, sp.to, 1.0};
        sp.standardized = standardizedOf(fp, 1.0);
        out.parameters.push_back(sp);
    }
    for (std::size_t k = 0; k < free_.size(); ++k) {
        const FreeParam& fp = free_[k];
        SemParameter sp;
        sp.kind = fp.kind;
        sp.from = fp.from;
        sp.to = fp.to;
        sp.estimate = thetaVec[k];
        sp.standardized = standardizedOf(fp, thetaVec[k]);
        out.parameters.push_back(sp);
    }

    double chi = std::max((nObs_ - 1) * f, 0.0);
    int df = degreesOfFreedom();

    double baselineF;
    if (method == SemMethod::Ml) {
        Eigen::LLT<Eigen::MatrixXd> llt(sampleCov_);
        double logDetS =
            2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        baselineF = sampleCov_.diagonal().array().log().sum() - logDetS;
    } else {
        double acc = 0.0;
        for (int i = 0; i < p_; ++i) {
            for (int j = i + 1; j < p_; ++j) acc += sampleCov_(i, j) * sampleCov_(i, j);
        }
        baselineF = acc;
    }
    double chiBaseline = std::max((nObs_ - 1) * baselineF, 0.0);
    int dfBaseline = p_ * (p_ + 1) / 2 - p_;

    out.indices = fitIndices(chi, df, chiBaseline, dfBaseline, nObs_);
    return out;
}

SemFit fitSem(const SemModel& model, const FeatureTable& data, SemMethod method) {
    SemEngine engine(model, data);
    return engine.fit(method);
}

std::string semFitToJson(const SemFit& fit) {
    nlohmann::json j;
    j["method"] = semMethodName(fit.method);
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["discrepancy"] = fit.discrepancy;
    j["n_obs"] = fit.nObs;
    j["n_free_params"] = fit.nFreeParams;

    const FitIndices& fi = fit.indices;
    j["fit_indices"] = {{"chi_square", fi.chiSquare},
                        {"df", fi.df},
                        {"p_value", fi.pValue},
                        {"baseline_chi_square", fi.baselineChiSquare},
                        {"baseline_df", fi.baselineDf},
                        {"cfi", fi.cfi},
                        {"tli", fi.tli},
                        {"rmsea", fi.rmsea},
                        {"cmin_df", fi.cminDf},
                        {"zero_df", fi.zeroDf}};

    auto kindName = [](SemParameter::Kind k) {
        switch (k) {
            case SemParameter::Kind::Loading: return "loading";
            case SemParameter::Kind::Path: return "path";
            case SemParameter::Kind::Variance: return "variance";
            case SemParameter::Kind::Covariance: return "covariance";
        }
        return "";
    };
    j["parameters"] = nlohmann::json::array();
    for (const SemParameter& sp : fit.parameters) {
        j["parameters"].push_back({{"kind", kindName(sp.kind)},
                                   {"from", sp.from},
                                   {"to", sp.to},
                                   {"fixed", sp.fixed},
                                   {"estimate", sp.estimate},
                                   {"standardized", sp.standardized}});
    }

    // Structural paths in the layout used for reporting: one row per
    // metric/feature pair.
    j["path_report"] = nlohmann::json::array();
    for (const SemParameter& sp : fit.parameters) {
        if (sp.kind != SemParameter::Kind::Path) continue;
        j["path_report"].push_back({{"metric", sp.to},
                                    {"feature", sp.from},
                                    {"estimate", sp.estimate},
                                    {"standardized", sp.standardized}});
    }

    j["implied_covariance"] = nlohmann::json::object();
    j["implied_covariance"]["variables"] = fit.variables;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < fit.impliedCov.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < fit.impliedCov.cols(); ++c) {
            row.push_back(fit.impliedCov(r, c));
        }
        rows.push_back(std::move(row));
    }
    j["implied_covariance"]["matrix"] = std::move(rows);
    return j.dump(2);
}

}  // namespace causalprobe
