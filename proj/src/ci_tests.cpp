#include "causalprobe/ci_tests.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "causalprobe/errors.hpp"
#include "causalprobe/stats_util.hpp"

namespace causalprobe {

namespace {

constexpr int kKcitMinRows = 10;
constexpr std::size_t kResidualCacheCap = 48;

kernels::Matrix columnsOf(const kernels::Matrix& data, const std::vector<int>& cols) {
    kernels::Matrix out(data.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out.col(static_cast<Eigen::Index>(i)) = data.col(cols[i]);
    }
    return out;
}

double elementwiseProductSum(const kernels::Matrix& a, const kernels::Matrix& b) {
    return a.cwiseProduct(b).sum();
}

}  // namespace

double partialCorrelationFromCov(const kernels::Matrix& cov, int x, int y,
                                 const std::vector<int>& z) {
    // Schur-complement form: only the conditioning block gets inverted, so a
    // deterministic relation between x and y comes out as rho = +-1 instead
    // of a singular two-by-two inversion.
    double sxx = cov(x, x);
    double syy = cov(y, y);
    double sxy = cov(x, y);
    if (!z.empty()) {
        const Eigen::Index m = static_cast<Eigen::Index>(z.size());
        kernels::Matrix szz(m, m);
        Eigen::VectorXd xz(m), yz(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            xz(i) = cov(x, z[i]);
            yz(i) = cov(y, z[i]);
            for (Eigen::Index j = 0; j < m; ++j) szz(i, j) = cov(z[i], z[j]);
        }
        Eigen::FullPivLU<kernels::Matrix> lu(szz);
        if (!lu.isInvertible()) {
            throw NumericError("singular_covariance",
                               "conditioning covariance block is singular");
        }
        Eigen::VectorXd wy = lu.solve(yz);
        sxx -= xz.dot(lu.solve(xz));
        syy -= yz.dot(wy);
        sxy -= xz.dot(wy);
    }
    const double denom = sxx * syy;
    if (denom <= 0.0) {
        throw NumericError("singular_covariance",
                           "residual variance vanished in the partial correlation");
    }
    return sxy / std::sqrt(denom);
}

FisherZTest::FisherZTest(kernels::Matrix data, double alpha)
    : data_(std::move(data)), alpha_(alpha) {
    if (alpha_ <= 0.0 || alpha_ >= 1.0) {
        throw ValidationError("bad_alpha", "alpha must lie in (0,1)");
    }
}

CiResult FisherZTest::test(int x, int y, const std::vector<int>& z) {
    const Eigen::Index n = data_.rows();
    const double dof = static_cast<double>(n) - static_cast<double>(z.size()) - 3.0;
    if (dof < 1.0) {
        throw ValidationError("too_few_rows",
                              "Fisher-Z needs n - |z| - 3 >= 1");
    }
    std::vector<int> idx{x, y};
    idx.insert(idx.end(), z.begin(), z.end());
    kernels::Matrix sub = columnsOf(data_, idx);
    kernels::Matrix centered = sub.rowwise() - sub.colwise().mean();
    kernels::Matrix cov =
        (centered.transpose() * centered) / (static_cast<double>(n) - 1.0);

    std::vector<int> zLocal(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zLocal[i] = static_cast<int>(i + 2);
    double rho = partialCorrelationFromCov(cov, 0, 1, zLocal);
    rho = std::clamp(rho, -1.0 + 1e-12, 1.0 - 1e-12);

    const double stat = std::sqrt(dof) * 0.5 * std::log((1.0 + rho) / (1.0 - rho));
    const double p = std::erfc(std::abs(stat) / std::sqrt(2.0));
    return {p > alpha_, p, stat};
}

KcitTest::KcitTest(kernels::Matrix data, double alpha, KcitParams params)
    : data_(std::move(data)), alpha_(alpha), params_(params) {
    if (alpha_ <= 0.0 || alpha_ >= 1.0) {
        throw ValidationError("bad_alpha", "alpha must lie in (0,1)");
    }
    if (data_.rows() < kKcitMinRows) {
        throw ValidationError("too_few_rows",
                              "KCIT needs at least " + std::to_string(kKcitMinRows) +
                                  " rows, got " + std::to_string(data_.rows()));
    }
    // Column-wise z-scoring makes the test scale-invariant and keeps the
    // ridge epsilon meaningful relative to the kernel scale. Constant
    // columns are left alone; they fail later with degenerate_kernel.
    for (Eigen::Index c = 0; c < data_.cols(); ++c) {
        const double mu = data_.col(c).mean();
        data_.col(c).array() -= mu;
        const double sd = std::sqrt(data_.col(c).squaredNorm() /
                                    static_cast<double>(data_.rows() - 1));
        if (sd > 0.0) data_.col(c) /= sd;
    }
}

const kernels::Matrix& KcitTest::centeredGram(int col) {
    auto it = gramCache_.find(col);
    if (it != gramCache_.end()) return it->second;
    kernels::Matrix x = data_.col(col);
    const double sigma = kernels::medianPairwiseDistance(x);
    if (sigma <= 0.0) {
        throw NumericError("degenerate_kernel",
                           "zero median pairwise distance in column " +
                               std::to_string(col));
    }
    kernels::Matrix k = kernels::gramRbf(x, sigma);
    kernels::centerGram(k);
    return gramCache_.emplace(col, std::move(k)).first->second;
}

const KcitTest::CondContext& KcitTest::condContext(const std::vector<int>& z) {
    auto it = condCache_.find(z);
    if (it != condCache_.end()) return it->second;

    kernels::Matrix zs = columnsOf(data_, z);
    const double sigma = kernels::medianPairwiseDistance(zs);
    if (sigma <= 0.0) {
        throw NumericError("degenerate_kernel",
                           "zero median pairwise distance in conditioning set");
    }
    kernels::Matrix kz = kernels::gramRbf(zs, sigma);
    kernels::centerGram(kz);
    const double trace = kz.trace();
    if (trace <= 0.0) {
        throw NumericError("degenerate_kernel", "conditioning Gram has zero trace");
    }
    kz /= trace;

    CondContext ctx;
    ctx.l = kernels::pivotedCholesky(kz, params_.choleskyTol,
                                     static_cast<int>(kz.rows()));
    const Eigen::Index r = ctx.l.cols();
    kernels::Matrix m = ctx.l.transpose() * ctx.l;
    m.diagonal().array() += params_.epsilon;
    ctx.g = m.llt().solve(kernels::Matrix::Identity(r, r));
    return condCache_.emplace(z, std::move(ctx)).first->second;
}

const kernels::Matrix& KcitTest::residualGram(int col, const std::vector<int>& z,
                                              const CondContext& ctx) {
    std::pair<int, std::vector<int>> key{col, z};
    auto it = residualCache_.find(key);
    if (it != residualCache_.end()) return it->second;

    const kernels::Matrix& k = centeredGram(col);
    // R K R with R = I - L G L^T, expanded so the large products stay O(n^2 r).
    kernels::Matrix b;
    kernels::matmul(k, ctx.l, b);                        // K L         (n x r)
    kernels::Matrix c = ctx.l.transpose() * b;           // L^T K L     (r x r)
    kernels::Matrix w = ctx.l * ctx.g;                   // L G         (n x r)
    kernels::Matrix wb;
    kernels::matmul(w, b.transpose(), wb);               // W B^T       (n x n)
    kernels::Matrix wc = w * c;                          // W C         (n x r)
    kernels::Matrix wcw;
    kernels::matmul(wc, w.transpose(), wcw);             // W C W^T     (n x n)
    kernels::Matrix res = k - wb - wb.transpose() + wcw;

    if (residualCache_.size() >= kResidualCacheCap && !residualOrder_.empty()) {
        residualCache_.erase(residualOrder_.front());
        residualOrder_.erase(residualOrder_.begin());
    }
    residualOrder_.push_back(key);
    return residualCache_.emplace(std::move(key), std::move(res)).first->second;
}

CiResult KcitTest::test(int x, int y, const std::vector<int>& z) {
    const double n = static_cast<double>(data_.rows());
    if (x > y) std::swap(x, y);  // exact symmetry, including the permutation null
    std::vector<int> zs(z);
    std::sort(zs.begin(), zs.end());

    const kernels::Matrix* kx;
    const kernels::Matrix* ky;
    if (zs.empty()) {
        kx = &centeredGram(x);
        ky = &centeredGram(y);
    } else {
        const CondContext& ctx = condContext(zs);
        kx = &residualGram(x, zs, ctx);
        ky = &residualGram(y, zs, ctx);
    }

    const double stat = elementwiseProductSum(*kx, *ky) / n;

    double p;
    if (params_.permutationNull) {
        std::mt19937_64 rng(params_.seed);
        const Eigen::Index rows = kx->rows();
        std::vector<int> perm(rows);
        for (Eigen::Index i = 0; i < rows; ++i) perm[i] = static_cast<int>(i);
        int exceed = 0;
        for (int it = 0; it < params_.nPermutations; ++it) {
            for (Eigen::Index i = rows - 1; i > 0; --i) {
                std::uint32_t j = boundedDraw(rng(), static_cast<std::uint32_t>(i + 1));
                std::swap(perm[i], perm[j]);
            }
            double permStat = 0.0;
            for (Eigen::Index i = 0; i < rows; ++i) {
                for (Eigen::Index jj = 0; jj < rows; ++jj) {
                    permStat += (*kx)(i, jj) * (*ky)(perm[i], perm[jj]);
                }
            }
            permStat /= n;
            if (permStat >= stat) ++exceed;
        }
        p = (1.0 + exceed) / (1.0 + params_.nPermutations);
    } else if (zs.empty()) {
        // Independent spectra: moments of the null come from the trace products.
        const double meanStat = kx->trace() * ky->trace() / (n * n);
        const double varStat =
            2.0 * kx->squaredNorm() * ky->squaredNorm() / (n * n * n * n);
        if (meanStat <= 0.0 || varStat <= 0.0) {
            p = 1.0;
        } else {
            const double shape = meanStat * meanStat / varStat;
            const double scale = varStat / meanStat;
            p = gammaUpperTail(stat, shape, scale);
        }
    } else {
        // Shared z structure: the null is sum_k sigma_k chi2_1 with sigma_k the
        // eigenvalues of the Hadamard product of the residualized Grams.
        kernels::Matrix m = kx->cwiseProduct(*ky);
        const double meanStat = m.trace() / n;
        const double varStat = 2.0 * m.squaredNorm() / (n * n);
        if (meanStat <= 0.0 || varStat <= 0.0) {
            p = 1.0;
        } else {
            const double shape = meanStat * meanStat / varStat;
            const double scale = varStat / meanStat;
            p = gammaUpperTail(stat, shape, scale);
        }
    }
    return {p > alpha_, p, stat};
}

OracleTest::OracleTest(const Dag& dag, const std::vector<std::string>& varNames)
    : dag_(dag) {
    colToNode_.reserve(varNames.size());
    for (const std::string& name : varNames) {
        colToNode_.push_back(dag_.indexOf(name));
    }
}

CiResult OracleTest::test(int x, int y, const std::vector<int>& z) {
    std::vector<int> zNodes;
    zNodes.reserve(z.size());
    for (int c : z) zNodes.push_back(colToNode_.at(c));
    bool sep = dSeparated(dag_, colToNode_.at(x), colToNode_.at(y), zNodes);
    return {sep, sep ? 1.0 : 0.0, sep ? 0.0 : 1.0};
}

}  // namespace causalprobe
