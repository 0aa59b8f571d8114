#include "fpp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fpp/montecarlo.hpp"

namespace fpp {

namespace {

double fp_slack(double scale) { return 1e-9 * (1.0 + std::abs(scale)); }

void check_floor(double T, long long n, long long m, double t0) {
    double floor_val = t0 * static_cast<double>(n) + static_cast<double>(std::llabs(m));
    if (T < floor_val - fp_slack(floor_val))
        throw std::logic_error("sampled passage time below the pathwise floor");
}

}  // namespace

LambdaEstimate estimate_lambda(const WeightDist& dist, double v, long long n,
                               long long replicas, std::uint64_t seed, SolveModel model,
                               int workers) {
    if (replicas < 2) throw domain_error("estimate_lambda: need at least 2 replicas");
    if (n < 1) throw domain_error("estimate_lambda: need n >= 1");
    const long long m = ceil_slope(v, n);
    const double t0 = dist.t0();
    std::vector<double> samples(static_cast<std::size_t>(replicas));
    for_each_replica(replicas, workers, [&](long long r) {
        Environment env(seed, static_cast<std::uint64_t>(r), dist);
        double T = model == SolveModel::directed ? passage_time_directed(env, n, m)
                                                 : semidirected_time(env, n, m);
        check_floor(T, n, m, t0);
        samples[static_cast<std::size_t>(r)] = T / static_cast<double>(n);
    });
    MeanStderr ms = mean_stderr(samples);
    LambdaEstimate est;
    est.v = v;
    est.n = n;
    est.replicas = replicas;
    est.mean = ms.mean;
    est.stderr_ = ms.stderr_;
    est.v_n = static_cast<double>(m) / static_cast<double>(n);
    est.lower_bound_pathwise = static_cast<double>(std::llabs(m)) / static_cast<double>(n) + t0;
    return est;
}

double exact_lambda_directed_twopoint(double lambda0, double kappa, double p, double v) {
    if (!(kappa > lambda0) || !(lambda0 >= 0))
        throw domain_error("closed form needs kappa > lambda0 >= 0");
    if (!(p > 0 && p < 1)) throw domain_error("closed form needs p in (0,1)");
    if (!(v >= 0)) throw domain_error("closed form needs v >= 0");
    const double q = 1.0 - p;
    if (v > q / p) return lambda0 + v;
    const double root = std::sqrt(q) - std::sqrt(p * v);
    return lambda0 + v + (kappa - lambda0) * root * root;
}

DerivBoundReport derivative_bounds_report(const WeightDist& dist, double v, double x_step,
                                          long long n, long long replicas, std::uint64_t seed,
                                          double significance_k, int workers) {
    if (!(x_step > 0)) throw domain_error("derivative report: x_step must be positive");
    if (!(v >= 0)) throw domain_error("derivative report: v must be >= 0");
    if (replicas < 2) throw domain_error("derivative report: need at least 2 replicas");
    if (n < 1) throw domain_error("derivative report: need n >= 1");

    const long long m = ceil_slope(v, n);
    std::vector<long long> Us(static_cast<std::size_t>(replicas)),
        Rs(static_cast<std::size_t>(replicas)), Ds(static_cast<std::size_t>(replicas));
    for_each_replica(replicas, workers, [&](long long r) {
        Environment env(seed, static_cast<std::uint64_t>(r), dist);
        GeodesicResult g = passage_time_semidirected(env, n, m);
        Us[static_cast<std::size_t>(r)] = g.turns.U;
        Rs[static_cast<std::size_t>(r)] = g.turns.R;
        Ds[static_cast<std::size_t>(r)] = g.turns.D;
    });
    const double dn = static_cast<double>(n);
    std::vector<double> up(Us.size()), low(Us.size()), ud(Us.size());
    for (std::size_t i = 0; i < Us.size(); ++i) {
        up[i] = static_cast<double>(Us[i] + Rs[i] - Ds[i]) / dn;
        low[i] = static_cast<double>(Us[i] - Rs[i] - Ds[i]) / dn;
        ud[i] = static_cast<double>(Us[i] - Ds[i]) / dn;
    }
    MeanStderr msu = mean_stderr(up), msl = mean_stderr(low), msud = mean_stderr(ud);

    // finite differences share the seed, so the same environments enter both
    // sides (common random numbers)
    LambdaEstimate e0 = estimate_lambda(dist, v, n, replicas, seed, SolveModel::semidirected,
                                        workers);
    LambdaEstimate ep = estimate_lambda(dist, v + x_step, n, replicas, seed,
                                        SolveModel::semidirected, workers);
    LambdaEstimate em = estimate_lambda(dist, v - x_step, n, replicas, seed,
                                        SolveModel::semidirected, workers);

    DerivBoundReport rep;
    rep.v = v;
    rep.n = n;
    rep.replicas = replicas;
    rep.upper_stat = msu.mean;
    rep.lower_stat = msl.mean;
    rep.upper_stderr = msu.stderr_;
    rep.lower_stderr = msl.stderr_;
    rep.ud_mean = msud.mean;
    rep.ud_stderr = msud.stderr_;
    rep.x = x_step;
    rep.fd_plus = (ep.mean - e0.mean) / x_step;
    rep.fd_minus = (e0.mean - em.mean) / x_step;
    double se_plus = std::hypot(ep.stderr_, e0.stderr_) / x_step;
    double se_minus = std::hypot(e0.stderr_, em.stderr_) / x_step;
    rep.fd_stderr = std::max(se_plus, se_minus);
    double tol_plus = significance_k * std::hypot(msu.stderr_, se_plus) + fp_slack(1.0);
    double tol_minus = significance_k * std::hypot(msl.stderr_, se_minus) + fp_slack(1.0);
    rep.bound_ok_plus = rep.fd_plus <= rep.upper_stat + tol_plus;
    rep.bound_ok_minus = rep.fd_minus >= rep.lower_stat - tol_minus;
    return rep;
}

const char* to_string(FlatEdgeCall c) {
    switch (c) {
        case FlatEdgeCall::flat_edge_consistent: return "flat-edge-consistent";
        case FlatEdgeCall::no_flat_edge_consistent: return "no-flat-edge-consistent";
        default: return "inconclusive";
    }
}

FlatEdgeVerdict classify_flat_edge(const WeightDist& dist, double test_v_margin, long long n,
                                   long long replicas, std::uint64_t seed,
                                   double significance_k, int workers) {
    DistSummary s = dist.summary();
    if (s.degenerate_zero)
        throw domain_error("flat-edge classification is undefined for unit mass at 0");
    FlatEdgeVerdict out;
    out.has_atom = s.atom_at_t0 > 0;
    if (out.has_atom) {
        out.onset_v = (1.0 - s.atom_at_t0) / s.atom_at_t0;
        out.test_v = out.onset_v + test_v_margin;
        LambdaEstimate est = estimate_lambda(dist, out.test_v, n, replicas, seed,
                                             SolveModel::semidirected, workers);
        out.excess = est.mean - (est.v_n + s.t0);
        out.excess_stderr = est.stderr_;
        out.verdict = std::abs(out.excess) <= significance_k * est.stderr_ + fp_slack(est.mean)
                          ? FlatEdgeCall::flat_edge_consistent
                          : FlatEdgeCall::inconclusive;
        return out;
    }
    out.onset_v = std::numeric_limits<double>::infinity();
    bool all_above = true;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (double v : {0.0, 1.0, 2.0}) {
        LambdaEstimate est =
            estimate_lambda(dist, v, n, replicas, seed, SolveModel::semidirected, workers);
        double excess = est.mean - (est.v_n + s.t0);
        bool above = excess > significance_k * est.stderr_ + fp_slack(est.mean);
        all_above = all_above && above;
        double ratio = est.stderr_ > 0 ? excess / est.stderr_
                                       : (excess > 0 ? std::numeric_limits<double>::infinity()
                                                     : 0.0);
        if (ratio < worst_ratio) {
            worst_ratio = ratio;
            out.test_v = v;
            out.excess = excess;
            out.excess_stderr = est.stderr_;
        }
    }
    out.verdict = all_above ? FlatEdgeCall::no_flat_edge_consistent
                            : FlatEdgeCall::inconclusive;
    return out;
}

ShapeCurve limit_shape_curve(const WeightDist& dist, long long n, long long replicas,
                             const std::vector<double>& theta_grid, std::uint64_t seed,
                             int workers) {
    if (dist.summary().degenerate_zero)
        throw domain_error("limit shape is degenerate for unit mass at 0");
    ShapeCurve curve;
    for (double th : theta_grid) {
        if (!(th >= 0) || !(th < std::numbers::pi / 2))
            throw domain_error("shape grid angles must lie in [0, pi/2)");
        double v = std::tan(th);
        LambdaEstimate est =
            estimate_lambda(dist, v, n, replicas, seed, SolveModel::semidirected, workers);
        ShapePoint pt;
        pt.theta = th;
        pt.v = est.v_n;
        pt.x = 1.0 / est.mean;
        pt.y = est.v_n / est.mean;
        pt.radius = std::hypot(pt.x, pt.y);
        pt.lambda_mean = est.mean;
        pt.lambda_stderr = est.stderr_;
        curve.points.push_back(pt);
        curve.thetas.push_back(th);
        curve.radii.push_back(pt.radius);
    }
    ShapePoint top;  // theta = pi/2 handled as the limit point (0,1)
    top.theta = std::numbers::pi / 2;
    top.v = std::numeric_limits<double>::infinity();
    top.x = 0;
    top.y = 1;
    top.radius = 1;
    top.lambda_mean = std::numeric_limits<double>::infinity();
    curve.points.push_back(top);
    curve.thetas.push_back(top.theta);
    curve.radii.push_back(1.0);

    const std::size_t L = curve.points.size() - 1;
    auto push = [&](double x, double y) { curve.closure.emplace_back(x, y); };
    for (std::size_t i = 0; i <= L; ++i) push(curve.points[i].x, curve.points[i].y);
    for (std::size_t i = L; i-- > 0;) push(-curve.points[i].x, curve.points[i].y);
    for (std::size_t i = 1; i <= L; ++i) push(-curve.points[i].x, -curve.points[i].y);
    for (std::size_t i = L; i-- > 1;) push(curve.points[i].x, -curve.points[i].y);
    return curve;
}

ShearCheckReport sheared_lambda_check(const WeightDist& dist, double v, double x, long long n,
                                      long long replicas, std::uint64_t seed, int sign,
                                      int workers) {
    if (sign != 1 && sign != -1) throw domain_error("shear check: sign must be +1 or -1");
    if (!(v >= 0)) throw domain_error("shear check: v must be >= 0");
    if (!(x >= 0 && x <= 1)) throw domain_error("shear check: x must lie in [0,1]");
    if (sign < 0 && !(v - x >= 0))
        throw domain_error("shear check: negative sign needs v - x >= 0");
    if (replicas < 2) throw domain_error("shear check: need at least 2 replicas");
    if (n < 1) throw domain_error("shear check: need n >= 1");

    std::vector<double> samples(static_cast<std::size_t>(replicas));
    for_each_replica(replicas, workers, [&](long long r) {
        Environment env(seed, static_cast<std::uint64_t>(r), dist);
        ShearSeq omega = sample_shear(x, n + 1, seed, static_cast<std::uint64_t>(r));
        samples[static_cast<std::size_t>(r)] =
            sheared_passage(env, n, v, omega, sign) / static_cast<double>(n);
    });
    MeanStderr ms = mean_stderr(samples);
    LambdaEstimate target = estimate_lambda(dist, v + sign * x, n, replicas, seed,
                                            SolveModel::semidirected, workers);
    ShearCheckReport rep;
    rep.v = v;
    rep.x = x;
    rep.sign = sign;
    rep.n = n;
    rep.replicas = replicas;
    rep.mean_b = ms.mean;
    rep.stderr_b = ms.stderr_;
    rep.target_mean = target.mean;
    rep.target_stderr = target.stderr_;
    rep.diff = ms.mean - target.mean;
    rep.combined_stderr = std::hypot(ms.stderr_, target.stderr_);
    return rep;
}

TailReport tail_estimates(const WeightDist& dist, double v, const std::vector<long long>& n_grid,
                          double eps, long long replicas, std::uint64_t seed, int workers) {
    if (!(eps > 0)) throw domain_error("tail estimates: eps must be positive");
    if (replicas < 2) throw domain_error("tail estimates: need at least 2 replicas");
    if (n_grid.empty()) throw domain_error("tail estimates: empty n grid");

    TailReport rep;
    rep.v = v;
    rep.eps = eps;
    rep.replicas = replicas;
    const double t0 = dist.t0();

    std::vector<double> xs, lu, ll_, lg;
    for (long long n : n_grid) {
        if (n < 1) throw domain_error("tail estimates: grid entries must be >= 1");
        const long long m = ceil_slope(v, n);
        std::vector<double> times(static_cast<std::size_t>(replicas));
        std::vector<long long> lengths(static_cast<std::size_t>(replicas));
        for_each_replica(replicas, workers, [&](long long r) {
            Environment env(seed, static_cast<std::uint64_t>(r), dist);
            GeodesicResult g = passage_time_semidirected(env, n, m);
            check_floor(g.time, n, m, t0);
            times[static_cast<std::size_t>(r)] = g.time;
            long long vert = 0;
            for (long long k = 0; k <= n; ++k)
                vert += std::llabs(g.gamma.gamma[static_cast<std::size_t>(k) + 1] -
                                   g.gamma.gamma[static_cast<std::size_t>(k)]);
            lengths[static_cast<std::size_t>(r)] = n + vert;
        });
        double lambda_hat = 0;
        for (double t : times) lambda_hat += t / static_cast<double>(n);
        lambda_hat /= static_cast<double>(replicas);

        TailRow row;
        row.n = n;
        row.lambda_hat = lambda_hat;
        const double up_thr = static_cast<double>(n) * (lambda_hat + eps);
        const double lo_thr = static_cast<double>(n) * (lambda_hat - eps);
        const double len_thr = static_cast<double>(n) * (lambda_hat + 1.0 + eps);
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] >= up_thr) ++row.count_upper;
            if (times[i] <= lo_thr) ++row.count_lower;
            if (static_cast<double>(lengths[i]) >= len_thr) ++row.count_length;
        }
        const double denom = static_cast<double>(replicas) + 1.0;
        row.freq_upper = (static_cast<double>(row.count_upper) + 0.5) / denom;
        row.freq_lower = (static_cast<double>(row.count_lower) + 0.5) / denom;
        row.freq_length = (static_cast<double>(row.count_length) + 0.5) / denom;
        rep.rows.push_back(row);

        xs.push_back(static_cast<double>(n));
        lu.push_back(std::log(row.freq_upper));
        ll_.push_back(std::log(row.freq_lower));
        lg.push_back(std::log(row.freq_length));
    }
    rep.slope_upper = regression_slope(xs, lu);
    rep.slope_lower = regression_slope(xs, ll_);
    rep.slope_length = regression_slope(xs, lg);

    // pointwise tail at a fixed small target
    std::vector<double> pt_times(static_cast<std::size_t>(replicas));
    for_each_replica(replicas, workers, [&](long long r) {
        Environment env(seed, static_cast<std::uint64_t>(r), dist);
        pt_times[static_cast<std::size_t>(r)] = semidirected_time(env, rep.point_u, rep.point_m);
    });
    const long long floor_k = static_cast<long long>(
        std::ceil(t0 * static_cast<double>(rep.point_u) +
                  static_cast<double>(std::llabs(rep.point_m)) - 1e-9));
    std::vector<double> ks, lp;
    for (long long k = floor_k - 1; k <= floor_k + 10; ++k) {
        PointTailRow prow;
        prow.k = k;
        for (double t : pt_times)
            if (t > static_cast<double>(k)) ++prow.count;
        prow.freq = (static_cast<double>(prow.count) + 0.5) /
                    (static_cast<double>(replicas) + 1.0);
        rep.point_tail.push_back(prow);
        ks.push_back(static_cast<double>(k));
        lp.push_back(std::log(prow.freq));
    }
    rep.point_slope = regression_slope(ks, lp);
    return rep;
}

namespace {

using u128 = unsigned __int128;

constexpr u128 kU64Max = static_cast<u128>(~0ULL);

u128 mul_check(u128 a, u128 b) {
    if (a != 0 && b > ~static_cast<u128>(0) / a)
        throw std::range_error("tuple count overflows");
    return a * b;
}

u128 binom_u128(long long nn, long long rr) {
    if (rr < 0 || rr > nn) return 0;
    rr = std::min(rr, nn - rr);
    u128 res = 1;
    for (long long i = 1; i <= rr; ++i) {
        res = mul_check(res, static_cast<u128>(nn - rr + i));
        res /= static_cast<u128>(i);
    }
    return res;
}

u128 pow2_u128(long long e) {
    if (e < 0 || e >= 127) throw std::range_error("tuple count overflows");
    return static_cast<u128>(1) << e;
}

}  // namespace

std::uint64_t count_jump_tuples(long long M, long long k, JumpMode mode) {
    if (M < 1 || k < 1) throw domain_error("tuple count needs M >= 1 and k >= 1");
    u128 total = 0;
    const long long top = std::min(k, M);
    if (mode == JumpMode::exact_sum) {
        // choose the rho nonzero slots, compose M into rho positive parts,
        // pick signs
        for (long long rho = 1; rho <= top; ++rho) {
            u128 term = mul_check(binom_u128(k, rho), binom_u128(M - 1, rho - 1));
            term = mul_check(term, pow2_u128(rho));
            total += term;
            if (total > kU64Max) throw std::range_error("tuple count overflows");
        }
    } else {
        for (long long rho = 0; rho <= top; ++rho) {
            u128 term = mul_check(binom_u128(k, rho), binom_u128(M, rho));
            term = mul_check(term, pow2_u128(rho));
            total += term;
            if (total > kU64Max) throw std::range_error("tuple count overflows");
        }
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t count_jump_tuples_variant(long long M, long long k) {
    if (M < 1 || k < 1) throw domain_error("tuple count needs M >= 1 and k >= 1");
    u128 total = 0;
    for (long long rho = 0; rho <= M - 1; ++rho) {
        u128 term = mul_check(binom_u128(k, rho), binom_u128(M - 1, rho));
        term = mul_check(term, pow2_u128(rho));
        total += term;
        if (total > kU64Max) throw std::range_error("tuple count overflows");
    }
    u128 last = mul_check(binom_u128(k, M), pow2_u128(M));
    total += last;
    if (total > kU64Max) throw std::range_error("tuple count overflows");
    return static_cast<std::uint64_t>(total);
}

double count_paths_bound(long long n, double C) {
    if (n < 0 || !(C >= 1)) throw domain_error("path bound needs n >= 0 and C >= 1");
    return std::pow(2.0 * C * std::numbers::e, static_cast<double>(n) + 1.0);
}

}  // namespace fpp
