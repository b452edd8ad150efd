#include <doctest.h>

#include <cstring>
#include <random>

#include "causalprobe/errors.hpp"
#include "causalprobe/kernels.hpp"

using namespace causalprobe;
using kernels::Matrix;

namespace {

Matrix randomMatrix(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
    }
    return m;
}

bool bitwiseEqual(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.data(), b.data(),
                       sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_CASE("matmul matches the serial reference bitwise and Eigen numerically") {
    // Sizes straddle the 64-row block boundary on purpose.
    for (int n : {1, 7, 64, 65, 130}) {
        Matrix a = randomMatrix(n, n + 3, 100 + n);
        Matrix b = randomMatrix(n + 3, n, 200 + n);
        Matrix c, cs;
        kernels::matmul(a, b, c);
        kernels::matmulSerial(a, b, cs);
        CHECK(bitwiseEqual(c, cs));
        Matrix ref = a * b;
        CHECK((c - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
    Matrix a = randomMatrix(3, 4, 1), b = randomMatrix(5, 3, 2), c;
    CHECK_THROWS_AS(kernels::matmul(a, b, c), ValidationError);
}

TEST_CASE("gramRbf matches the serial reference bitwise") {
    for (int n : {2, 63, 64, 100}) {
        Matrix x = randomMatrix(n, 3, 300 + n);
        Matrix k = kernels::gramRbf(x, 1.3);
        Matrix ks = kernels::gramRbfSerial(x, 1.3);
        CHECK(bitwiseEqual(k, ks));
        CHECK(k(0, 0) == doctest::Approx(1.0));
        CHECK(k.isApprox(k.transpose()));
    }
    Matrix x = randomMatrix(4, 2, 9);
    CHECK_THROWS_AS((void)kernels::gramRbf(x, 0.0), NumericError);
}

TEST_CASE("centerGram matches the serial reference bitwise and centers") {
    for (int n : {3, 64, 129}) {
        Matrix x = randomMatrix(n, 2, 400 + n);
        Matrix k = kernels::gramRbf(x, 0.9);
        Matrix k2 = k;
        kernels::centerGram(k);
        kernels::centerGramSerial(k2);
        CHECK(bitwiseEqual(k, k2));
        CHECK(k.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9);
        CHECK(k.colwise().sum().cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("medianPairwiseDistance matches the serial reference bitwise") {
    for (int n : {2, 5, 64, 101}) {
        Matrix x = randomMatrix(n, 4, 500 + n);
        double d = kernels::medianPairwiseDistance(x);
        double ds = kernels::medianPairwiseDistanceSerial(x);
        CHECK(std::memcmp(&d, &ds, sizeof(double)) == 0);
        CHECK(d > 0.0);
    }
    // Two points: the median is the single distance.
    Matrix two(2, 1);
    two << 0.0, 3.0;
    CHECK(kernels::medianPairwiseDistance(two) == doctest::Approx(3.0));
    Matrix one(1, 1);
    one << 0.0;
    CHECK_THROWS_AS((void)kernels::medianPairwiseDistance(one), NumericError);
}

TEST_CASE("pivoted Cholesky reconstructs PSD matrices") {
    // Full-rank case: L L^T recovers the matrix.
    Matrix x = randomMatrix(40, 6, 77);
    Matrix a = x * x.transpose() + 0.5 * Matrix::Identity(40, 40);
    Matrix l = kernels::pivotedCholesky(a, 1e-12, 40);
    CHECK((l * l.transpose() - a).cwiseAbs().maxCoeff() < 1e-8);

    // Low-rank case: rank detected, residual below tolerance.
    Matrix y = randomMatrix(30, 3, 78);
    Matrix b = y * y.transpose();
    Matrix lb = kernels::pivotedCholesky(b, 1e-10, 30);
    CHECK(lb.cols() <= 4);
    CHECK((lb * lb.transpose() - b).cwiseAbs().maxCoeff() < 1e-7);

    // maxRank caps the factor width.
    Matrix lc = kernels::pivotedCholesky(a, 1e-12, 5);
    CHECK(lc.cols() == 5);
}
