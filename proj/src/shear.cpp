#include "fpp/shear.hpp"

#include <cmath>
#include <numeric>

#include "fpp/errors.hpp"

namespace fpp {

ShearSeq make_shear_seq(std::vector<int> bits, double x) {
    if (!(x >= 0 && x <= 1)) throw domain_error("shear intensity must lie in [0,1]");
    ShearSeq w;
    w.x = x;
    w.prefix.resize(bits.size() + 1, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw domain_error("shear bits must be 0/1");
        w.prefix[i + 1] = w.prefix[i] + bits[i];
    }
    w.bits = std::move(bits);
    return w;
}

ShearSeq sample_shear(double x, long long len, std::uint64_t master_seed,
                      std::uint64_t replica) {
    if (!(x >= 0 && x <= 1)) throw domain_error("shear intensity must lie in [0,1]");
    if (len < 0) throw domain_error("shear length must be >= 0");
    std::vector<int> bits(static_cast<std::size_t>(len));
    for (long long i = 0; i < len; ++i) {
        double u = rng::uniform01(master_seed, replica, rng::stream_shear,
                                  static_cast<std::uint64_t>(i), 0);
        bits[static_cast<std::size_t>(i)] = u < x ? 1 : 0;
    }
    return make_shear_seq(std::move(bits), x);
}

ShearSeq permutation_shear(double x, long long n, double v, std::uint64_t master_seed,
                           std::uint64_t replica) {
    if (!(x >= 0 && x <= 1)) throw domain_error("shear intensity must lie in [0,1]");
    const long long len = n + 1;
    const long long ones = ceil_slope(v + x, n) - ceil_slope(v, n);
    if (ones < 0 || ones > len)
        throw domain_error("permutation shear: ones count outside [0, n+1]");
    std::vector<int> slots(static_cast<std::size_t>(len));
    std::iota(slots.begin(), slots.end(), 0);
    std::vector<int> bits(static_cast<std::size_t>(len), 0);
    // partial Fisher-Yates: the first `ones` draws pick distinct positions
    // uniformly
    for (long long i = 0; i < ones; ++i) {
        double u = rng::uniform01(master_seed, replica, rng::stream_perm,
                                  static_cast<std::uint64_t>(i), 0);
        long long j = i + static_cast<long long>(u * static_cast<double>(len - i));
        std::swap(slots[static_cast<std::size_t>(i)], slots[static_cast<std::size_t>(j)]);
        bits[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)])] = 1;
    }
    return make_shear_seq(std::move(bits), x);
}

PioneerVector apply_shear_path(const PioneerVector& g, const ShearSeq& w, int sign) {
    if (sign != 1 && sign != -1) throw domain_error("shear sign must be +1 or -1");
    if (static_cast<long long>(w.bits.size()) < g.n + 1)
        throw domain_error("shear sequence shorter than n+1");
    PioneerVector out;
    out.n = g.n;
    out.gamma.resize(g.gamma.size());
    for (std::size_t k = 0; k < g.gamma.size(); ++k)
        out.gamma[k] = g.gamma[k] + sign * w.prefix[k];
    out.v = out.n > 0 ? static_cast<double>(out.gamma.back()) / static_cast<double>(out.n)
                      : static_cast<double>(out.gamma.back());
    return out;
}

double passage_time_B(const PioneerVector& g, const ShearSeq& w, int sign,
                      const Environment& env) {
    if (sign != 1 && sign != -1) throw domain_error("shear sign must be +1 or -1");
    if (static_cast<long long>(w.bits.size()) < g.n + 1)
        throw domain_error("shear sequence shorter than n+1");
    // same term order as passage_time_A: vertical total first, then F_1..F_n
    long long vert = 0;
    for (long long k = 0; k <= g.n; ++k) {
        long long d = g.gamma[static_cast<std::size_t>(k) + 1] -
                      g.gamma[static_cast<std::size_t>(k)] +
                      sign * w.bits[static_cast<std::size_t>(k)];
        vert += std::llabs(d);
    }
    double t = static_cast<double>(vert);
    for (long long k = 1; k <= g.n; ++k)
        t += env.horizontal_weight(k, g.gamma[static_cast<std::size_t>(k)]);
    return t;
}

}  // namespace fpp
