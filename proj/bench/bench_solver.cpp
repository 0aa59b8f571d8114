// timing harness: replica-loop scaling and sweep kernel vs. serial Dijkstra
#include <chrono>
#include <cstdio>
#include <vector>

#include "fpp/montecarlo.hpp"
#include "fpp/solver.hpp"

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
        .count();
}

double run_replicas(const fpp::WeightDist& dist, long long n, long long m,
                    long long replicas, int workers) {
    std::vector<double> out(static_cast<std::size_t>(replicas));
    double t0 = now_ms();
    fpp::for_each_replica(replicas, workers, [&](long long r) {
        fpp::Environment env(12345, static_cast<std::uint64_t>(r), dist);
        out[static_cast<std::size_t>(r)] = fpp::semidirected_time(env, n, m);
    });
    double t1 = now_ms();
    double acc = 0;
    for (double x : out) acc += x;
    std::printf("  replicas=%lld workers=%d  %8.1f ms  (mean T/n %.6f)\n", replicas,
                workers, t1 - t0, acc / static_cast<double>(replicas) /
                                      static_cast<double>(n));
    return t1 - t0;
}

void compare_engines(const fpp::WeightDist& dist, long long n, long long m,
                     long long replicas) {
    double sweep_acc = 0, dij_acc = 0;
    double t0 = now_ms();
    for (long long r = 0; r < replicas; ++r) {
        fpp::Environment env(777, static_cast<std::uint64_t>(r), dist);
        sweep_acc += fpp::semidirected_time(env, n, m);
    }
    double t1 = now_ms();
    for (long long r = 0; r < replicas; ++r) {
        fpp::Environment env(777, static_cast<std::uint64_t>(r), dist);
        dij_acc += fpp::semidirected_time_reference(env, n, m);
    }
    double t2 = now_ms();
    std::printf("  n=%lld m=%lld replicas=%lld  sweep %8.1f ms   dijkstra %8.1f ms   "
                "values %s\n",
                n, m, replicas, t1 - t0, t2 - t1, sweep_acc == dij_acc ? "equal" : "DIFFER");
}

}  // namespace

int main() {
    fpp::WeightDist dist = fpp::WeightDist::two_point(1, 3, 0.5);

    std::printf("replica loop scaling (n=2000, v=1):\n");
    for (int workers : {1, 2, 4}) run_replicas(dist, 2000, 2000, 64, workers);

    std::printf("column-sweep kernel vs. serial Dijkstra reference:\n");
    compare_engines(dist, 200, 100, 20);
    compare_engines(dist, 500, 250, 20);
    compare_engines(dist, 1000, 500, 10);

    std::printf("large single solves (sweep):\n");
    for (long long n : {2000LL, 5000LL, 10000LL}) {
        double t0 = now_ms();
        fpp::Environment env(42, 0, dist);
        double val = fpp::semidirected_time(env, n, n);
        double t1 = now_ms();
        std::printf("  n=%lld  %8.1f ms  T/n=%.6f\n", n, t1 - t0,
                    val / static_cast<double>(n));
    }
    return 0;
}
