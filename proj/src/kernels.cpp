#include "causalprobe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "causalprobe/errors.hpp"

namespace causalprobe::kernels {

namespace {

constexpr Eigen::Index kRowBlock = 64;

inline Eigen::Index blockCount(Eigen::Index rows) {
    return (rows + kRowBlock - 1) / kRowBlock;
}

void matmulBlock(const Matrix& a, const Matrix& b, Matrix& c, Eigen::Index blk) {
    const Eigen::Index r0 = blk * kRowBlock;
    const Eigen::Index h = std::min(kRowBlock, a.rows() - r0);
    c.middleRows(r0, h).noalias() = a.middleRows(r0, h) * b;
}

void gramRbfRow(const Matrix& x, double inv2s2, Matrix& k, Eigen::Index i) {
    const Eigen::Index n = x.rows();
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
        const double d2 = (x.row(i) - x.row(j)).squaredNorm();
        const double v = std::exp(-d2 * inv2s2);
        k(i, j) = v;
        k(j, i) = v;
    }
}

void centerRow(Matrix& k, const Eigen::VectorXd& rowMean, double grandMean,
               Eigen::Index i) {
    const Eigen::Index n = k.cols();
    const double ri = rowMean(i);
    for (Eigen::Index j = 0; j < n; ++j) {
        k(i, j) += grandMean - ri - rowMean(j);
    }
}

}  // namespace

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
    if (a.cols() != b.rows()) {
        throw ValidationError("dimension_mismatch", "matmul shape mismatch");
    }
    c.resize(a.rows(), b.cols());
    const Eigen::Index nb = blockCount(a.rows());
#pragma omp parallel for schedule(static)
    for (Eigen::Index blk = 0; blk < nb; ++blk) {
        matmulBlock(a, b, c, blk);
    }
}

void matmulSerial(const Matrix& a, const Matrix& b, Matrix& c) {
    if (a.cols() != b.rows()) {
        throw ValidationError("dimension_mismatch", "matmul shape mismatch");
    }
    c.resize(a.rows(), b.cols());
    const Eigen::Index nb = blockCount(a.rows());
    for (Eigen::Index blk = 0; blk < nb; ++blk) {
        matmulBlock(a, b, c, blk);
    }
}

Matrix gramRbf(const Matrix& x, double sigma) {
    if (sigma <= 0.0) {
        throw NumericError("degenerate_kernel", "kernel bandwidth must be positive");
    }
    const Eigen::Index n = x.rows();
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    Matrix k(n, n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        gramRbfRow(x, inv2s2, k, i);
    }
    return k;
}

Matrix gramRbfSerial(const Matrix& x, double sigma) {
    if (sigma <= 0.0) {
        throw NumericError("degenerate_kernel", "kernel bandwidth must be positive");
    }
    const Eigen::Index n = x.rows();
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    Matrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        gramRbfRow(x, inv2s2, k, i);
    }
    return k;
}

void centerGram(Matrix& k) {
    const Eigen::Index n = k.rows();
    Eigen::VectorXd rowMean(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        rowMean(i) = k.row(i).sum() / static_cast<double>(n);
    }
    double grandMean = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) grandMean += rowMean(i);
    grandMean /= static_cast<double>(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        centerRow(k, rowMean, grandMean, i);
    }
}

void centerGramSerial(Matrix& k) {
    const Eigen::Index n = k.rows();
    Eigen::VectorXd rowMean(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rowMean(i) = k.row(i).sum() / static_cast<double>(n);
    }
    double grandMean = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) grandMean += rowMean(i);
    grandMean /= static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        centerRow(k, rowMean, grandMean, i);
    }
}

namespace {

double medianOf(std::vector<double>& d) {
    if (d.empty()) {
        throw NumericError("degenerate_kernel", "no pairwise distances");
    }
    const std::size_t mid = d.size() / 2;
    std::nth_element(d.begin(), d.begin() + mid, d.end());
    double hi = d[mid];
    if (d.size() % 2 == 1) return hi;
    std::nth_element(d.begin(), d.begin() + mid - 1, d.begin() + mid);
    return 0.5 * (d[mid - 1] + hi);
}

inline std::size_t pairOffset(std::size_t i, std::size_t n) {
    return i * n - i * (i + 1) / 2;  // start of row i's pairs (j > i)
}

}  // namespace

double medianPairwiseDistance(const Matrix& x) {
    const std::size_t n = static_cast<std::size_t>(x.rows());
    std::vector<double> d(n * (n - 1) / 2);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
        std::size_t base = pairOffset(i, n);
        for (std::size_t j = i + 1; j < n; ++j) {
            d[base + (j - i - 1)] = (x.row(i) - x.row(j)).norm();
        }
    }
    return medianOf(d);
}

double medianPairwiseDistanceSerial(const Matrix& x) {
    const std::size_t n = static_cast<std::size_t>(x.rows());
    std::vector<double> d(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t base = pairOffset(i, n);
        for (std::size_t j = i + 1; j < n; ++j) {
            d[base + (j - i - 1)] = (x.row(i) - x.row(j)).norm();
        }
    }
    return medianOf(d);
}

Matrix pivotedCholesky(const Matrix& a, double tol, int maxRank) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd d = a.diagonal();
    const int rmax = std::min<Eigen::Index>(maxRank, n);
    Matrix l(n, rmax);
    int r = 0;
    while (r < rmax) {
        double rest = 0.0;
        Eigen::Index piv = -1;
        double best = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (d(i) > best) {
                best = d(i);
                piv = i;
            }
            if (d(i) > 0.0) rest += d(i);
        }
        if (piv < 0 || rest <= tol) break;
        const double root = std::sqrt(best);
        Eigen::VectorXd col = a.col(piv);
        if (r > 0) col.noalias() -= l.leftCols(r) * l.row(piv).head(r).transpose();
        col /= root;
        col(piv) = root;
        l.col(r) = col;
        for (Eigen::Index i = 0; i < n; ++i) d(i) -= col(i) * col(i);
        d(piv) = 0.0;
        ++r;
    }
    return l.leftCols(r);
}

}  // namespace causalprobe::kernels
