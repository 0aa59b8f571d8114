#include "fpp/env.hpp"

#include <algorithm>

namespace fpp {

Environment Environment::with_overlay(const std::vector<int>& omega_bits, int sign) const {
    if (sign != 1 && sign != -1) throw domain_error("overlay sign must be +1 or -1");
    std::size_t len = omega_bits.size() + 1;
    std::vector<long long> shift(std::max<std::size_t>(len, shift_ ? shift_->size() : 0), 0);
    if (shift_)
        for (std::size_t i = 0; i < shift_->size(); ++i) shift[i] = (*shift_)[i];
    long long prefix = 0;
    for (std::size_t i = 1; i < shift.size(); ++i) {
        if (i < len) {
            int b = omega_bits[i - 1];
            if (b != 0 && b != 1) throw domain_error("overlay bits must be 0/1");
            prefix += b;
        }
        shift[i] += sign * prefix;
    }
    Environment e(*this);
    e.shift_ = std::make_shared<const std::vector<long long>>(std::move(shift));
    return e;
}

DetourReport detour(const Environment& env, long long k, long long y, double B, long long cap) {
    if (!(B > env.dist().t0()))
        throw domain_error("detour: bound must exceed the infimum of the support");
    if (!(env.dist().cdf_left(B) > 0))
        throw domain_error("detour: weights below the bound must have positive probability");
    for (long long j = 1; j <= cap; ++j) {
        double wu = env.horizontal_weight(k, y + j);
        double wd = env.horizontal_weight(k, y - j);
        double w = std::min(wu, wd);
        if (w < B) return DetourReport{k, y, j, w, 2.0 * static_cast<double>(j) + w};
    }
    throw env_pathology_error("detour: no edge below the bound within " + std::to_string(cap) +
                              " rows");
}

}  // namespace fpp
