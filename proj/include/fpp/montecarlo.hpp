#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fpp {

// Runs fn(r) for r = 0..count-1 across a worker pool.  Each job writes into
// its own replica-indexed slot, so aggregation order (and therefore output)
// is independent of scheduling; workers <= 1 runs serially.
template <typename F>
void for_each_replica(long long count, int workers, F&& fn) {
#ifdef _OPENMP
    if (workers > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (long long r = 0; r < count; ++r) fn(r);
        return;
    }
#else
    (void)workers;
#endif
    for (long long r = 0; r < count; ++r) fn(r);
}

struct MeanStderr {
    double mean = 0;
    double stderr_ = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    const std::size_t R = xs.size();
    if (R == 0) return out;
    double s = 0;
    for (double x : xs) s += x;
    out.mean = s / static_cast<double>(R);
    if (R < 2) return out;
    double ss = 0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / (static_cast<double>(R) * static_cast<double>(R - 1)));
    return out;
}

// Least-squares slope of y against x.
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t N = x.size();
    if (N < 2 || y.size() != N) return 0;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < N; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(N);
    my /= static_cast<double>(N);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < N; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return den > 0 ? num / den : 0;
}

}  // namespace fpp
