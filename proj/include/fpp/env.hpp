#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "fpp/dist.hpp"
#include "fpp/errors.hpp"
#include "fpp/rng.hpp"

namespace fpp {

// Detour from the horizontal edge at (k,y): nearest parallel edge of weight
// below the bound, reached by 2*k_B vertical unit edges.
struct DetourReport {
    long long k = 0;
    long long y = 0;
    long long k_B = 0;       // vertical distance to the discovered edge
    double edge_weight = 0;  // its weight, < B
    double dt_B = 0;         // 2*k_B + edge_weight
};

// Immutable random environment: horizontal weight F_k(y) for the edge
// ((k-1,y),(k,y)) is a pure function of (master_seed, replica, k, y).
// Vertical edges always cost exactly 1 and are never stored.
class Environment {
  public:
    Environment(std::uint64_t master_seed, std::uint64_t replica, WeightDist dist)
        : seed_(master_seed), replica_(replica), dist_(std::move(dist)) {}

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t replica() const { return replica_; }
    const WeightDist& dist() const { return dist_; }

    // F_k(y), k >= 1; overlay shifts the queried height by its prefix sum at k.
    double horizontal_weight(long long k, long long y) const {
        long long yq = y + overlay_shift(k);
        if (negate_) yq = -yq;
        if (field_) return (*field_)(k, yq);
        return dist_.inv_cdf(rng::uniform01(seed_, replica_, rng::stream_edge,
                                            static_cast<std::uint64_t>(k),
                                            static_cast<std::uint64_t>(yq)));
    }

    // Overlay environment: weight queries at (k,y) read the base field at
    // y + sign*prefix[k] where prefix[k] = sum of the first k bits.  Composes
    // with any overlay already present, so (+w) then (-w) restores the base.
    Environment with_overlay(const std::vector<int>& omega_bits, int sign) const;

    // y -> -y reflection of the field (test support for symmetry checks).
    Environment with_negated_y() const {
        Environment e(*this);
        e.negate_ = !e.negate_;
        return e;
    }

    // Replace the random field by an explicit function (planted instances in
    // tests).  dist() is still consulted for the support infimum.
    Environment with_field(std::function<double(long long, long long)> f) const {
        Environment e(*this);
        e.field_ = std::make_shared<std::function<double(long long, long long)>>(std::move(f));
        return e;
    }

    long long overlay_shift(long long k) const {
        if (!shift_ || shift_->empty()) return 0;
        if (k < 0) return 0;
        std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(k), shift_->size() - 1);
        return (*shift_)[i];
    }

  private:
    std::uint64_t seed_;
    std::uint64_t replica_;
    WeightDist dist_;
    // signed overlay prefix sums, indexed by column k (entry 0 unused = 0)
    std::shared_ptr<const std::vector<long long>> shift_;
    bool negate_ = false;
    std::shared_ptr<const std::function<double(long long, long long)>> field_;
};

inline double horizontal_weight(const Environment& env, long long k, long long y) {
    return env.horizontal_weight(k, y);
}

// Site weight at (k,y) for the site-percolation variant: 0 with probability
// p_zero, else 1.  Separate randomness stream from edge weights.
inline double site_weight(std::uint64_t master_seed, std::uint64_t replica, long long k,
                          long long y, double p_zero) {
    double u = rng::uniform01(master_seed, replica, rng::stream_site,
                              static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(y));
    return u < p_zero ? 0.0 : 1.0;
}

// k_B = min{j >= 1 : min(F_k(y+j), F_k(y-j)) < B}; dt_B = 2*k_B + that weight.
DetourReport detour(const Environment& env, long long k, long long y, double B,
                    long long cap = 1000000);

}  // namespace fpp
