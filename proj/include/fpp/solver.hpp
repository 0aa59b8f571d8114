#pragma once

#include <cstdint>
#include <vector>

#include "fpp/env.hpp"
#include "fpp/path.hpp"
#include "fpp/shear.hpp"

namespace fpp {

struct GeodesicResult {
    double time = 0;
    PioneerVector gamma;
    TurnStats turns;
    long long cylinder_halfheight = 0;  // confinement bound used for the solve
    bool expanded = false;              // whether the band had to grow
};

// Exact semi-directed optimum from (0,0) to (n,m): column-sweep dynamic
// program over pioneer heights inside a band whose width is derived from the
// vertical-then-horizontal reference path (leaving the band provably costs
// more than that reference).  Among optimal paths, returns the one with the
// lexicographically smallest pioneer vector.  result.time equals
// passage_time_A(result.gamma, env) exactly.
GeodesicResult passage_time_semidirected(const Environment& env, long long n, long long m);

// Value-only fast path of the same optimum (no geodesic reconstruction).
double semidirected_time(const Environment& env, long long n, long long m);

// Serial label-setting (Dijkstra) reference on the cylinder grid; kept for
// cross-checking the sweep kernel and for benchmarking.
double semidirected_time_reference(const Environment& env, long long n, long long m);

// Directed (up/right only) dynamic program; m >= 0.
double passage_time_directed(const Environment& env, long long n, long long m);

// Site-percolation variant: minimize the number of weight-1 sites visited by
// a semi-directed path from (0,0) to (n,m), sites i.i.d. 0 w.p. p.  The band
// half-height is grown geometrically until the value stabilizes.
double passage_time_site(double p, std::uint64_t master_seed, std::uint64_t replica,
                         long long n, long long m);

// inf over g in Gamma^n(v) of B^n(sign*w)(g), computed through the overlay
// change of variables: semi-directed optimum to (n, ceil(vn) + sign*prefix
// total) on the environment shifted by -sign*prefix.
double sheared_passage(const Environment& env, long long n, double v, const ShearSeq& omega,
                       int sign);

// Exhaustive minimum of passage_time_A over pioneer vectors with |g_k| <=
// hmax, with admissible pruning; throws oracle_scope_error past the node
// budget.  If best_gamma is non-null it receives the lexicographically
// smallest optimal vector.
double brute_force_passage(const Environment& env, long long n, long long m, long long hmax,
                           std::vector<long long>* best_gamma = nullptr,
                           long long node_budget = 10000000);

}  // namespace fpp
