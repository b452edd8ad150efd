// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce bitwise-identical results.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>

#include <omp.h>

#include "causalprobe/kernels.hpp"

namespace k = causalprobe::kernels;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timeBest(F&& f, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        f();
        auto t1 = Clock::now();
        best = std::min(best, seconds(t0, t1));
    }
    return best;
}

bool bitwiseEqual(const k::Matrix& a, const k::Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

}  // namespace

int main() {
    const int n = 1024;
    const int reps = 3;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);

    k::Matrix a(n, n), b(n, n), x(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = gauss(rng);
            b(i, j) = gauss(rng);
        }
        x(i, 0) = gauss(rng);
        x(i, 1) = gauss(rng);
    }

    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%-24s %12s %12s %9s %7s\n", "kernel", "serial (s)", "parallel (s)",
                "speedup", "match");

    {
        k::Matrix cs(n, n), cp(n, n);
        double ts = timeBest([&] { k::matmulSerial(a, b, cs); }, reps);
        double tp = timeBest([&] { k::matmul(a, b, cp); }, reps);
        std::printf("%-24s %12.4f %12.4f %8.2fx %7s\n", "matmul 1024x1024", ts, tp,
                    ts / tp, bitwiseEqual(cs, cp) ? "yes" : "NO");
    }
    {
        double sigma = k::medianPairwiseDistanceSerial(x);
        k::Matrix gs, gp;
        double ts = timeBest([&] { gs = k::gramRbfSerial(x, sigma); }, reps);
        double tp = timeBest([&] { gp = k::gramRbf(x, sigma); }, reps);
        std::printf("%-24s %12.4f %12.4f %8.2fx %7s\n", "gramRbf 1024x2", ts, tp,
                    ts / tp, bitwiseEqual(gs, gp) ? "yes" : "NO");
    }
    {
        k::Matrix gs = k::gramRbfSerial(x, k::medianPairwiseDistanceSerial(x));
        k::Matrix cs = gs, cp = gs;
        double ts = timeBest(
            [&] {
                cs = gs;
                k::centerGramSerial(cs);
            },
            reps);
        double tp = timeBest(
            [&] {
                cp = gs;
                k::centerGram(cp);
            },
            reps);
        std::printf("%-24s %12.4f %12.4f %8.2fx %7s\n", "centerGram 1024", ts, tp,
                    ts / tp, bitwiseEqual(cs, cp) ? "yes" : "NO");
    }
    {
        double ms = 0.0, mp = 0.0;
        double ts = timeBest([&] { ms = k::medianPairwiseDistanceSerial(x); }, reps);
        double tp = timeBest([&] { mp = k::medianPairwiseDistance(x); }, reps);
        std::printf("%-24s %12.4f %12.4f %8.2fx %7s\n", "medianDistance 1024", ts, tp,
                    ts / tp, ms == mp ? "yes" : "NO");
    }
    return 0;
}
