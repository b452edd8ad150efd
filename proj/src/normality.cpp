#include "causalprobe/normality.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "causalprobe/errors.hpp"
#include "causalprobe/stats_util.hpp"

namespace causalprobe {

namespace {

// Polynomial coefficient sets from Royston (1995), algorithm AS R94.
constexpr double kC1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr double kC2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[3] = {-0.4803, -0.082676, 0.0030302};
constexpr double kG[2] = {-2.273, 0.459};

template <std::size_t N>
double poly(const double (&c)[N], double x) {
    double acc = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

}  // namespace

ShapiroResult shapiroWilk(std::vector<double> x) {
    const std::size_t n = x.size();
    if (n < 3) {
        throw ValidationError("sample_too_small",
                              "Shapiro-Wilk needs n >= 3, got " + std::to_string(n));
    }
    if (n > 5000) {
        throw ValidationError("sample_too_large",
                              "Shapiro-Wilk approximation is valid up to n = 5000, got " +
                                  std::to_string(n));
    }
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() <= 0.0) {
        throw ValidationError("zero_variance_sample",
                              "all sample values are identical");
    }

    const std::size_t n2 = n / 2;
    const double an = static_cast<double>(n);

    // Expected normal order statistics for the lower half (negative values),
    // then the Royston-corrected weights, stored as positive numbers paired
    // with the upper tail.
    std::vector<double> m(n2), a(n2);
    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        double summ2 = 0.0;
        for (std::size_t i = 0; i < n2; ++i) {
            m[i] = normalQuantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

        std::size_t i1;
        double fac;
        if (n > 5) {
            i1 = 2;
            const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = a2;
        } else {
            i1 = 1;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        for (std::size_t i = i1; i < n2; ++i) a[i] = -m[i] / fac;
    }

    // W is the squared correlation between the sorted data and the full
    // antisymmetric weight vector (-a[0], ..., 0, ..., a[0]).
    double xbar = 0.0;
    for (double v : x) xbar += v;
    xbar /= an;
    double ssx = 0.0, ssa = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double coef = 0.0;
        if (i < n2) {
            coef = -a[i];
        } else if (n - 1 - i < n2) {
            coef = a[n - 1 - i];
        }
        const double dx = x[i] - xbar;
        ssx += dx * dx;
        ssa += coef * coef;  // coefficient mean is zero by antisymmetry
        sax += coef * dx;
    }
    double w = (sax * sax) / (ssa * ssx);
    if (w > 1.0) w = 1.0;

    // P-value transforms.
    double p;
    if (n == 3) {
        constexpr double kPi6 = 1.90985931710274;    // 6/pi
        constexpr double kStqr = 1.04719755119660;   // asin(sqrt(3/4))
        p = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
        p = std::clamp(p, 0.0, 1.0);
    } else {
        double y = std::log(1.0 - w);
        double mu, sigma;
        if (n <= 11) {
            const double gamma = poly(kG, an);
            if (y >= gamma) {
                return {w, 1e-99};
            }
            y = -std::log(gamma - y);
            mu = poly(kC3, an);
            sigma = std::exp(poly(kC4, an));
        } else {
            const double lnn = std::log(an);
            mu = poly(kC5, lnn);
            sigma = std::exp(poly(kC6, lnn));
        }
        p = 1.0 - normalCdf((y - mu) / sigma);
    }
    return {w, p};
}

NormalityReport normalityReport(const FeatureTable& table, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) {
        throw ValidationError("bad_alpha", "alpha must lie in (0,1)");
    }
    NormalityReport report;
    report.alpha = alpha;
    report.rows.reserve(table.nCols());
    for (std::size_t c = 0; c < table.nCols(); ++c) {
        ShapiroResult r = shapiroWilk(table.cols[c]);
        report.rows.push_back({table.names[c], r.w, r.p, r.p > alpha});
    }
    return report;
}

std::string normalityReportToJson(const NormalityReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const NormalityRow& row : report.rows) {
        rows.push_back({{"column", row.column},
                        {"W", row.w},
                        {"p", row.p},
                        {"normal", row.normal}});
    }
    nlohmann::json doc{{"alpha", report.alpha}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

}  // namespace causalprobe
