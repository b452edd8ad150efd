#include "causalprobe/stats_util.hpp"

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>

#include <cmath>
#include <mutex>

namespace causalprobe {

namespace {

// GSL aborts on domain errors by default; disable that once, globally, and
// rely on the NaN returns instead.
std::once_flag gGslHandlerOnce;

void disableGslAbort() {
    std::call_once(gGslHandlerOnce, [] { gsl_set_error_handler_off(); });
}

}  // namespace

double normalCdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normalQuantile(double p) {
    disableGslAbort();
    return gsl_cdf_ugaussian_Pinv(p);
}

double gammaUpperTail(double x, double shape, double scale) {
    disableGslAbort();
    if (x <= 0.0) return 1.0;
    double q = gsl_cdf_gamma_Q(x, shape, scale);
    if (std::isnan(q)) return 1.0;
    return q;
}

double chiSquareUpperTail(double x, double df) {
    disableGslAbort();
    if (x <= 0.0) return 1.0;
    double q = gsl_cdf_chisq_Q(x, df);
    if (std::isnan(q)) return 1.0;
    return q;
}

std::uint32_t boundedDraw(std::uint64_t raw, std::uint32_t bound) {
    // Lemire's multiply-shift; bias is O(2^-32), irrelevant for subsampling.
    return static_cast<std::uint32_t>(((raw & 0xffffffffULL) * bound) >> 32);
}

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double sampleVariance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

}  // namespace causalprobe
