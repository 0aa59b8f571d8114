#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fpp/env.hpp"
#include "fpp/errors.hpp"

namespace fpp {

// Nearest-integer snap of v*n (guards against 0.3*10 = 2.9999...), else ceil.
long long ceil_slope(double v, long long n);

// Finite lattice path; steps between consecutive vertices must be unit moves.
struct LatticePath {
    std::vector<std::pair<long long, long long>> vertices;

    bool is_semidirected() const;  // every step in {(1,0),(0,1),(0,-1)}
    void validate() const;         // adjacency check, throws domain_error
};

// Pioneer heights (g_0,...,g_{n+1}) of a semi-directed path to (n, ceil(v*n)):
// g_k is the height at which the path first enters column k; g_{n+1} is the
// final height.
struct PioneerVector {
    std::vector<long long> gamma;  // length n+2
    long long n = 0;               // horizontal span
    double v = 0;                  // target slope, ceil_slope(v,n) == gamma.back()
};

PioneerVector make_pioneer(std::vector<long long> gamma, double v);

// Up/right/down classification of consecutive pioneer heights; U+R+D = n+1.
struct TurnStats {
    long long U = 0;
    long long R = 0;
    long long D = 0;
};

struct StripStats {
    long long down_edges = 0;  // total downward vertical steps of the path
    double eta = 0;            // fraction of width-K strips with slow increment
};

// Extract pioneer heights from a semi-directed path from (0,0) to (n,m).
PioneerVector pioneer_vector(const LatticePath& p, long long n, long long m);

// The unique semi-directed non-intersecting path with the given pioneer
// heights: vertical run to g_{k+1} inside column k, then the horizontal edge.
LatticePath path_from_pioneer(const PioneerVector& g);

// A^n(g) = sum_k |g_{k+1}-g_k| + sum_k F_k(g_k): the passage time of
// path_from_pioneer(g).  Summation order is fixed (all vertical terms, then
// F_1..F_n) so identities over this functional can be checked bit-exactly.
double passage_time_A(const PioneerVector& g, const Environment& env);

TurnStats turn_stats(const PioneerVector& g);

// Divide [0,n] into n/K strips; eta counts strips whose height increment is
// at most K*(v_n + eps) with v_n = gamma.back()/n; the endpoint height is
// substituted for the pioneer height at x = n.
StripStats strip_slope_stats(const PioneerVector& g, long long K, double eps);

// Loop-erasure + left-step replacement: returns a semi-directed path with the
// same endpoints whose passage time never exceeds the original's on any
// environment.
LatticePath normalize_to_semidirected(const LatticePath& p);

}  // namespace fpp
