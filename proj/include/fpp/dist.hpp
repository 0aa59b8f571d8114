#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpp/errors.hpp"

// Horizontal edge weight distributions G on [0, inf): point mass, two-point,
// uniform, exponential, and finite-support empirical laws, plus the two
// couplings the estimators rely on (truncation above at B, and the two-point
// reduction used to force the linear regime).
//
// All sampling goes through the generalized inverse CDF so that coupled laws
// evaluated at the same uniform are coupled pathwise by construction.

namespace fpp {

struct Dirac {
    double x;
    bool operator==(const Dirac&) const = default;
};

struct TwoPoint {
    double lo, hi, p_lo;
    bool operator==(const TwoPoint&) const = default;
};

struct Uniform {
    double a, b;
    bool operator==(const Uniform&) const = default;
};

struct Exponential {
    double rate;
    bool operator==(const Exponential&) const = default;
};

struct Empirical {
    std::vector<double> values;  // strictly increasing
    std::vector<double> probs;   // positive, sums to 1
    bool operator==(const Empirical&) const = default;
};

struct DistSummary {
    double t0;          // infimum of the support
    double atom_at_t0;  // mass exactly at t0 (0 for continuous laws)
    double mean;
    bool degenerate_zero;  // G = delta_0
};

class WeightDist {
  public:
    using Variant = std::variant<Dirac, TwoPoint, Uniform, Exponential, Empirical>;

    explicit WeightDist(Variant v, std::optional<double> cap = std::nullopt);

    static WeightDist dirac(double x);
    static WeightDist two_point(double lo, double hi, double p_lo);
    static WeightDist uniform(double a, double b);
    static WeightDist exponential(double rate);
    static WeightDist empirical(std::vector<double> values, std::vector<double> probs);

    const Variant& variant() const { return v_; }
    // Truncation bound when the capped law has no exact representative in the
    // base family (continuous variants only; discrete caps are folded).
    std::optional<double> cap() const { return cap_; }

    double inv_cdf(double u) const;  // generalized inverse, u in (0,1)
    double cdf(double t) const;      // P(w <= t)
    double cdf_left(double t) const; // P(w < t)
    double mean() const;
    double t0() const;
    double atom_at_t0() const;
    DistSummary summary() const;

    std::string spec_string() const;

    bool operator==(const WeightDist&) const = default;

  private:
    Variant v_;
    std::optional<double> cap_;
};

DistSummary summary(const WeightDist& dist);

// G^B: the law of min(w, B).  Coupled with G through shared uniforms:
// inv_cdf(truncate(G,B), u) == min(inv_cdf(G,u), B) for every u.
WeightDist truncate(const WeightDist& dist, double bound);

// Two-point reduction of an arbitrary law: a threshold t above t0 with
// p = P(w < t) in (0, 1/(1+v)] defines the coupling
//   w' = t0 if w < t, else w' = t,
// which is dominated by w pathwise and keeps the reduced slope condition
// v <= (1-p)/p.  The threshold is the smallest admissible candidate among
// quantile-grid points and (for discrete laws) the atoms above t0.
struct BernoulliReduction {
    WeightDist dist;   // TwoPoint(t0, threshold, p) unless degenerate
    double threshold;  // t(v)
    double p_lo;       // P(w < threshold)
    bool degenerate;   // no admissible threshold existed
};

BernoulliReduction bernoulli_reduction(const WeightDist& dist, double v,
                                       const std::vector<double>& level_fracs = {1.0, 0.99, 0.9, 0.5});

// The coupling rule applied to a single draw of the base law.
double bernoulli_reduce_weight(const BernoulliReduction& red, double tau);

// CLI grammar: dirac:X | twopoint:LO,HI,P | uniform:A,B | exp:RATE |
// empirical:PATH.csv (CSV columns value,prob, optional header).
WeightDist parse_dist_spec(const std::string& spec);

}  // namespace fpp
