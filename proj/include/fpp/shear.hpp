#pragma once

#include <cstdint>
#include <vector>

#include "fpp/env.hpp"
#include "fpp/path.hpp"

namespace fpp {

// Bernoulli bit sequence with cached prefix sums: prefix[k] = bits_1+...+bits_k.
struct ShearSeq {
    std::vector<int> bits;
    double x = 0;                    // intensity
    std::vector<long long> prefix;   // length bits.size()+1, prefix[0] = 0
};

ShearSeq make_shear_seq(std::vector<int> bits, double x);

// i.i.d. Bernoulli(x) bits, reproducible from the seed context.
ShearSeq sample_shear(double x, long long len, std::uint64_t master_seed,
                      std::uint64_t replica);

// Exactly ceil_slope(v+x,n) - ceil_slope(v,n) ones placed uniformly at random
// among n+1 positions (partial Fisher-Yates on a dedicated stream).
ShearSeq permutation_shear(double x, long long n, double v, std::uint64_t master_seed,
                           std::uint64_t replica);

// Discrete right derivative of |.|: +1 if z >= 0, -1 if z < 0.
inline long long delta_V(long long z) { return 1 - 2 * static_cast<long long>(z < 0); }

// Coordinate shear of pioneer heights: result_k = g_k + sign*prefix[k].
PioneerVector apply_shear_path(const PioneerVector& g, const ShearSeq& w, int sign);

// B^n(sign*w)(g) = sum_k |g_{k+1}-g_k + sign*w_{k+1}| + sum_k F_k(g_k),
// summed in the same order as passage_time_A so the change-of-variables
// identity holds bit-exactly.
double passage_time_B(const PioneerVector& g, const ShearSeq& w, int sign,
                      const Environment& env);

}  // namespace fpp
