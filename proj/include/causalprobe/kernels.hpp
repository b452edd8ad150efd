#pragma once

#include <Eigen/Dense>

namespace causalprobe::kernels {

using Matrix = Eigen::MatrixXd;

// All parallel kernels compute over fixed 64-row blocks so the result is
// bitwise identical for any thread count; the *Serial variants walk the same
// blocks on one thread and are kept as the reference implementations for
// tests and benchmarks.

void matmul(const Matrix& a, const Matrix& b, Matrix& c);
void matmulSerial(const Matrix& a, const Matrix& b, Matrix& c);

// RBF Gram matrix on the rows of x: exp(-||xi - xj||^2 / (2 sigma^2)).
Matrix gramRbf(const Matrix& x, double sigma);
Matrix gramRbfSerial(const Matrix& x, double sigma);

// Double centering K <- HKH with H = I - 11^T/n.
void centerGram(Matrix& k);
void centerGramSerial(Matrix& k);

// Median of the n(n-1)/2 pairwise Euclidean distances between rows of x.
double medianPairwiseDistance(const Matrix& x);
double medianPairwiseDistanceSerial(const Matrix& x);

// Pivoted Cholesky of a symmetric PSD matrix: returns L (n x r) with
// A ~= L L^T, stopping when the residual trace drops to tol or at maxRank.
// Serial and fully deterministic (ties break to the lowest index).
Matrix pivotedCholesky(const Matrix& a, double tol, int maxRank);

}  // namespace causalprobe::kernels
