#pragma once

#include <cstdint>
#include <vector>

namespace causalprobe {

// Thin wrappers around GSL's distribution functions so the rest of the code
// never includes GSL headers directly.
double normalCdf(double x);
double normalQuantile(double p);

// Regularized upper tail of Gamma(shape, scale); returns the p-value of an
// observed statistic under a fitted gamma null.
double gammaUpperTail(double x, double shape, double scale);

double chiSquareUpperTail(double x, double df);

// Deterministic bounded integer draw in [0, bound) via multiply-shift; avoids
// the implementation-defined behavior of std::uniform_int_distribution.
std::uint32_t boundedDraw(std::uint64_t raw, std::uint32_t bound);

double mean(const std::vector<double>& xs);
double sampleVariance(const std::vector<double>& xs);  // n-1 denominator

}  // namespace causalprobe
