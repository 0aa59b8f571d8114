#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpp/dist.hpp"
#include "fpp/solver.hpp"

namespace fpp {

enum class SolveModel { semidirected, directed };

struct LambdaEstimate {
    double v = 0;
    long long n = 0;
    long long replicas = 0;
    double mean = 0;
    double stderr_ = 0;
    double lower_bound_pathwise = 0;  // |m|/n + t0, the per-sample floor
    double v_n = 0;                   // effective slope m/n actually solved
};

// Mean and standard error of T(0,(n,ceil(vn)))/n over independent replicas.
// Environments depend only on (seed, replica), so sweeps over v at a fixed
// seed share random inputs (common random numbers).
LambdaEstimate estimate_lambda(const WeightDist& dist, double v, long long n,
                               long long replicas, std::uint64_t seed,
                               SolveModel model = SolveModel::semidirected,
                               int workers = 1);

// Closed form for the directed two-point time constant: with q = 1-p,
// lambda0 + v for v > q/p, else lambda0 + v + (kappa-lambda0)*(sqrt(q)-sqrt(p*v))^2.
double exact_lambda_directed_twopoint(double lambda0, double kappa, double p, double v);

struct DerivBoundReport {
    double v = 0;
    long long n = 0;
    long long replicas = 0;
    double upper_stat = 0;   // mean (U+R-D)/n
    double lower_stat = 0;   // mean (U-R-D)/n
    double upper_stderr = 0;
    double lower_stderr = 0;
    double ud_mean = 0;      // mean (U-D)/n, ~0 at v = 0 by symmetry
    double ud_stderr = 0;
    double fd_plus = 0;      // (lambda(v+x)-lambda(v))/x
    double fd_minus = 0;     // (lambda(v)-lambda(v-x))/x
    double fd_stderr = 0;    // combined stderr of the finite differences
    double x = 0;
    bool bound_ok_plus = false;   // fd_plus <= upper_stat + k*stderr
    bool bound_ok_minus = false;  // fd_minus >= lower_stat - k*stderr
};

DerivBoundReport derivative_bounds_report(const WeightDist& dist, double v, double x_step,
                                          long long n, long long replicas, std::uint64_t seed,
                                          double significance_k = 3.0, int workers = 1);

enum class FlatEdgeCall { flat_edge_consistent, no_flat_edge_consistent, inconclusive };

struct FlatEdgeVerdict {
    bool has_atom = false;
    double onset_v = 0;        // (1-G(t0))/G(t0) when atomic
    double test_v = 0;
    double excess = 0;         // lambda_hat(test_v) - (v_n + t0)
    double excess_stderr = 0;
    FlatEdgeCall verdict = FlatEdgeCall::inconclusive;
};

const char* to_string(FlatEdgeCall c);

// Atomic law: tests v = onset + margin; consistent with a flat edge iff the
// excess over the linear floor is within k standard errors of 0.  Atomless
// law: tests v in {0,1,2}; consistent with no flat edge iff the excess is
// significantly positive at every v.  A statistical consistency check, not a
// proof.
FlatEdgeVerdict classify_flat_edge(const WeightDist& dist, double test_v_margin, long long n,
                                   long long replicas, std::uint64_t seed,
                                   double significance_k = 3.0, int workers = 1);

struct ShapePoint {
    double theta = 0;    // requested angle
    double v = 0;        // effective slope solved (ceil rounding applied)
    double radius = 0;   // distance of the boundary point from the origin
    double x = 0;        // 1/lambda_hat
    double y = 0;        // v_n/lambda_hat
    double lambda_mean = 0;
    double lambda_stderr = 0;
};

struct ShapeCurve {
    std::vector<double> thetas;
    std::vector<double> radii;
    std::vector<ShapePoint> points;                      // first quadrant, ends at (0,1)
    std::vector<std::pair<double, double>> closure;      // 4-fold symmetric polygon
};

// Boundary samples of the limit shape: radius 1/(lambda(tan t)*cos t) per
// grid angle in [0, pi/2), plus the limit point (0,1); replicas are shared
// across angles (common random numbers).
ShapeCurve limit_shape_curve(const WeightDist& dist, long long n, long long replicas,
                             const std::vector<double>& theta_grid, std::uint64_t seed,
                             int workers = 1);

struct ShearCheckReport {
    double v = 0;
    double x = 0;
    int sign = 1;
    long long n = 0;
    long long replicas = 0;
    double mean_b = 0;        // mean of B^n_*/n over (env, omega) pairs
    double stderr_b = 0;
    double target_mean = 0;   // lambda_hat(v + sign*x)
    double target_stderr = 0;
    double diff = 0;
    double combined_stderr = 0;
};

ShearCheckReport sheared_lambda_check(const WeightDist& dist, double v, double x, long long n,
                                      long long replicas, std::uint64_t seed, int sign = 1,
                                      int workers = 1);

struct TailRow {
    long long n = 0;
    double lambda_hat = 0;
    long long count_upper = 0;   // T >= n*(lambda_hat + eps)
    long long count_lower = 0;   // T <= n*(lambda_hat - eps)
    long long count_length = 0;  // path edge count >= n*(lambda_hat + 1 + eps)
    double freq_upper = 0;       // continuity-corrected (c+0.5)/(R+1)
    double freq_lower = 0;
    double freq_length = 0;
};

struct PointTailRow {
    long long k = 0;
    long long count = 0;  // T > k
    double freq = 0;
};

struct TailReport {
    double v = 0;
    double eps = 0;
    long long replicas = 0;
    std::vector<TailRow> rows;
    double slope_upper = 0;   // regression of log freq against n
    double slope_lower = 0;
    double slope_length = 0;
    long long point_u = 5;    // fixed small target for the pointwise tail
    long long point_m = 3;
    std::vector<PointTailRow> point_tail;
    double point_slope = 0;   // regression of log P(T > k) against k
};

TailReport tail_estimates(const WeightDist& dist, double v, const std::vector<long long>& n_grid,
                          double eps, long long replicas, std::uint64_t seed, int workers = 1);

enum class JumpMode { exact_sum, at_most };

// Number of integer k-tuples whose absolute values sum to exactly M
// (exact_sum) or to at most M (at_most); verified against enumeration.
std::uint64_t count_jump_tuples(long long M, long long k, JumpMode mode);

// A closed-form variant sometimes quoted for the same count; it disagrees
// with enumeration (9 at M=k=2 versus 8 exact / 13 at-most) and is kept for
// comparison only.
std::uint64_t count_jump_tuples_variant(long long M, long long k);

// (2*C*e)^(n+1), an upper bound for the number of semi-directed paths with
// passage time at most C*n.
double count_paths_bound(long long n, double C);

}  // namespace fpp
