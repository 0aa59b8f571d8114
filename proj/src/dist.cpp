#include "fpp/dist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace fpp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw config_error(msg);
}

bool finite(double x) { return std::isfinite(x); }

std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

WeightDist::WeightDist(Variant v, std::optional<double> cap) : v_(std::move(v)), cap_(cap) {
    std::visit(
        [](auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                require(finite(d.x) && d.x >= 0, "dirac: point mass must be a finite weight >= 0");
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                require(finite(d.lo) && finite(d.hi) && d.lo >= 0 && d.lo < d.hi,
                        "twopoint: need 0 <= lo < hi");
                require(d.p_lo > 0 && d.p_lo < 1, "twopoint: need p_lo in (0,1)");
            } else if constexpr (std::is_same_v<T, Uniform>) {
                require(finite(d.a) && finite(d.b) && d.a >= 0 && d.a < d.b,
                        "uniform: need 0 <= a < b");
            } else if constexpr (std::is_same_v<T, Exponential>) {
                require(finite(d.rate) && d.rate > 0, "exp: need rate > 0");
            } else if constexpr (std::is_same_v<T, Empirical>) {
                require(!d.values.empty() && d.values.size() == d.probs.size(),
                        "empirical: need matching nonempty value/prob lists");
                double sum = 0;
                for (std::size_t i = 0; i < d.values.size(); ++i) {
                    require(finite(d.values[i]) && d.values[i] >= 0,
                            "empirical: weights must be finite and >= 0");
                    require(i == 0 || d.values[i] > d.values[i - 1],
                            "empirical: values must be strictly increasing");
                    require(finite(d.probs[i]) && d.probs[i] > 0,
                            "empirical: probabilities must be positive");
                    sum += d.probs[i];
                }
                require(std::abs(sum - 1.0) <= 1e-9, "empirical: probabilities must sum to 1");
                for (double& p : d.probs) p /= sum;
            }
        },
        v_);
    if (cap_) {
        require(finite(*cap_), "truncation bound must be finite");
        // folding in truncate() guarantees cap > t0 and cap below the top of
        // the support; re-checked cheaply here
        if (*cap_ <= t0()) throw domain_error("truncation bound must exceed t0");
    }
}

WeightDist WeightDist::dirac(double x) { return WeightDist(Dirac{x}); }
WeightDist WeightDist::two_point(double lo, double hi, double p_lo) {
    return WeightDist(TwoPoint{lo, hi, p_lo});
}
WeightDist WeightDist::uniform(double a, double b) { return WeightDist(Uniform{a, b}); }
WeightDist WeightDist::exponential(double rate) { return WeightDist(Exponential{rate}); }
WeightDist WeightDist::empirical(std::vector<double> values, std::vector<double> probs) {
    return WeightDist(Empirical{std::move(values), std::move(probs)});
}

double WeightDist::inv_cdf(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw domain_error("inv_cdf: u must lie in (0,1)");
    double raw = std::visit(
        [u](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return d.x;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                return u <= d.p_lo ? d.lo : d.hi;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return d.a + u * (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-u) / d.rate;
            } else {
                double cum = 0;
                for (std::size_t i = 0; i < d.values.size(); ++i) {
                    cum += d.probs[i];
                    if (u <= cum) return d.values[i];
                }
                return d.values.back();
            }
        },
        v_);
    return cap_ ? std::min(raw, *cap_) : raw;
}

double WeightDist::cdf(double t) const {
    if (cap_ && t >= *cap_) return 1.0;
    return std::visit(
        [t](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return t >= d.x ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                if (t < d.lo) return 0.0;
                return t < d.hi ? d.p_lo : 1.0;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (t <= d.a) return 0.0;
                if (t >= d.b) return 1.0;
                return (t - d.a) / (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return t <= 0 ? 0.0 : -std::expm1(-d.rate * t);
            } else {
                double s = 0;
                for (std::size_t i = 0; i < d.values.size() && d.values[i] <= t; ++i)
                    s += d.probs[i];
                return s;
            }
        },
        v_);
}

double WeightDist::cdf_left(double t) const {
    if (cap_ && t > *cap_) return 1.0;
    return std::visit(
        [t](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return t > d.x ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                if (t <= d.lo) return 0.0;
                return t <= d.hi ? d.p_lo : 1.0;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (t <= d.a) return 0.0;
                if (t >= d.b) return 1.0;
                return (t - d.a) / (d.b - d.a);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return t <= 0 ? 0.0 : -std::expm1(-d.rate * t);
            } else {
                double s = 0;
                for (std::size_t i = 0; i < d.values.size() && d.values[i] < t; ++i)
                    s += d.probs[i];
                return s;
            }
        },
        v_);
}

double WeightDist::mean() const {
    if (!cap_) {
        return std::visit(
            [](const auto& d) -> double {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, Dirac>) {
                    return d.x;
                } else if constexpr (std::is_same_v<T, TwoPoint>) {
                    return d.p_lo * d.lo + (1 - d.p_lo) * d.hi;
                } else if constexpr (std::is_same_v<T, Uniform>) {
                    return 0.5 * (d.a + d.b);
                } else if constexpr (std::is_same_v<T, Exponential>) {
                    return 1.0 / d.rate;
                } else {
                    return std::inner_product(d.values.begin(), d.values.end(),
                                              d.probs.begin(), 0.0);
                }
            },
            v_);
    }
    // E[min(X, B)] for the two continuous families (discrete caps are folded)
    double B = *cap_;
    if (const auto* u = std::get_if<Uniform>(&v_)) {
        return (B * B - u->a * u->a) / (2 * (u->b - u->a)) + B * (u->b - B) / (u->b - u->a);
    }
    const auto& e = std::get<Exponential>(v_);
    return -std::expm1(-e.rate * B) / e.rate;
}

double WeightDist::t0() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) return d.x;
            else if constexpr (std::is_same_v<T, TwoPoint>) return d.lo;
            else if constexpr (std::is_same_v<T, Uniform>) return d.a;
            else if constexpr (std::is_same_v<T, Exponential>) return 0.0;
            else return d.values.front();
        },
        v_);
}

double WeightDist::atom_at_t0() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) return 1.0;
            else if constexpr (std::is_same_v<T, TwoPoint>) return d.p_lo;
            else if constexpr (std::is_same_v<T, Empirical>) return d.probs.front();
            else return 0.0;
        },
        v_);
}

DistSummary WeightDist::summary() const {
    DistSummary s{};
    s.t0 = t0();
    s.atom_at_t0 = atom_at_t0();
    s.mean = mean();
    s.degenerate_zero = (s.t0 == 0.0 && s.atom_at_t0 == 1.0);
    return s;
}

std::string WeightDist::spec_string() const {
    std::string s = std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return "dirac:" + fmt_num(d.x);
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                return "twopoint:" + fmt_num(d.lo) + "," + fmt_num(d.hi) + "," + fmt_num(d.p_lo);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return "uniform:" + fmt_num(d.a) + "," + fmt_num(d.b);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return "exp:" + fmt_num(d.rate);
            } else {
                std::string out = "empirical:[";
                for (std::size_t i = 0; i < d.values.size(); ++i) {
                    if (i) out += ",";
                    out += fmt_num(d.values[i]) + ":" + fmt_num(d.probs[i]);
                }
                return out + "]";
            }
        },
        v_);
    if (cap_) s += "|cap=" + fmt_num(*cap_);
    return s;
}

DistSummary summary(const WeightDist& dist) { return dist.summary(); }

WeightDist truncate(const WeightDist& dist, double bound) {
    if (!std::isfinite(bound) || bound <= dist.t0())
        throw domain_error("truncate: bound must exceed the infimum of the support");
    double B = dist.cap() ? std::min(*dist.cap(), bound) : bound;
    return std::visit(
        [&](const auto& d) -> WeightDist {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return dist;  // B > x, min(x,B) = x
            } else if constexpr (std::is_same_v<T, TwoPoint>) {
                if (B >= d.hi) return WeightDist(TwoPoint{d.lo, d.hi, d.p_lo});
                return WeightDist(TwoPoint{d.lo, B, d.p_lo});
            } else if constexpr (std::is_same_v<T, Empirical>) {
                if (B >= d.values.back()) return WeightDist(Empirical{d.values, d.probs});
                std::vector<double> vs, ps;
                double tail = 0;
                for (std::size_t i = 0; i < d.values.size(); ++i) {
                    if (d.values[i] < B) {
                        vs.push_back(d.values[i]);
                        ps.push_back(d.probs[i]);
                    } else {
                        tail += d.probs[i];
                    }
                }
                vs.push_back(B);
                ps.push_back(tail);
                return WeightDist(Empirical{std::move(vs), std::move(ps)});
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (B >= d.b) return WeightDist(Uniform{d.a, d.b});
                return WeightDist(Uniform{d.a, d.b}, B);
            } else {
                return WeightDist(Exponential{d.rate}, B);
            }
        },
        dist.variant());
}

BernoulliReduction bernoulli_reduction(const WeightDist& dist, double v,
                                       const std::vector<double>& level_fracs) {
    if (std::holds_alternative<Dirac>(dist.variant()))
        throw domain_error("bernoulli_reduction: point masses admit no reduction");
    if (!(v >= 0)) throw domain_error("bernoulli_reduction: slope must be >= 0");

    const double t0 = dist.t0();
    const double pmax = 1.0 / (1.0 + v);

    std::vector<double> candidates;
    for (double f : level_fracs) {
        double lvl = pmax * f;
        if (lvl > 0 && lvl < 1) candidates.push_back(dist.inv_cdf(lvl));
    }
    // atoms above t0 are thresholds in their own right (mass strictly below
    // an atom can be admissible even when no quantile lands between atoms)
    if (const auto* tp = std::get_if<TwoPoint>(&dist.variant())) {
        candidates.push_back(tp->hi);
    } else if (const auto* em = std::get_if<Empirical>(&dist.variant())) {
        for (double val : em->values)
            if (val > t0) candidates.push_back(val);
    }
    if (dist.cap()) candidates.push_back(*dist.cap());

    std::sort(candidates.begin(), candidates.end());
    for (double t : candidates) {
        if (!(t > t0)) continue;
        double p = dist.cdf_left(t);
        if (p > 0 && p <= pmax)
            return BernoulliReduction{WeightDist::two_point(t0, t, p), t, p, false};
    }
    return BernoulliReduction{WeightDist::dirac(t0), t0, dist.atom_at_t0(), true};
}

double bernoulli_reduce_weight(const BernoulliReduction& red, double tau) {
    double t0 = red.dist.t0();
    if (red.degenerate) return t0;
    return tau < red.threshold ? t0 : red.threshold;
}

namespace {

double parse_num(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw config_error("cannot parse " + what + " from '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw config_error("trailing junk in " + what + ": '" + s + "'");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

WeightDist load_empirical_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("empirical: cannot open '" + path + "'");
    std::vector<std::pair<double, double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cols = split(t, ',');
        if (cols.size() != 2)
            throw config_error("empirical: expected 'value,prob' rows in '" + path + "'");
        if (first) {
            first = false;
            // optional header line
            try {
                std::size_t p0 = 0;
                std::stod(trim(cols[0]), &p0);
            } catch (const std::exception&) {
                continue;
            }
        }
        rows.emplace_back(parse_num(trim(cols[0]), "empirical value"),
                          parse_num(trim(cols[1]), "empirical prob"));
    }
    if (rows.empty()) throw config_error("empirical: no data rows in '" + path + "'");
    std::sort(rows.begin(), rows.end());
    std::vector<double> vs, ps;
    for (auto& [val, prob] : rows) {
        if (!vs.empty() && val == vs.back())
            throw config_error("empirical: duplicate value " + fmt_num(val));
        vs.push_back(val);
        ps.push_back(prob);
    }
    return WeightDist::empirical(std::move(vs), std::move(ps));
}

}  // namespace

WeightDist parse_dist_spec(const std::string& spec) {
    // optional "|cap=B" suffix produced by spec_string() on truncated laws
    auto bar = spec.rfind("|cap=");
    if (bar != std::string::npos) {
        WeightDist base = parse_dist_spec(spec.substr(0, bar));
        return truncate(base, parse_num(trim(spec.substr(bar + 5)), "truncation bound"));
    }
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw config_error("distribution spec '" + spec + "' lacks a ':'");
    std::string kind = trim(spec.substr(0, colon));
    std::string rest = trim(spec.substr(colon + 1));
    if (kind == "dirac") {
        return WeightDist::dirac(parse_num(rest, "dirac point"));
    }
    if (kind == "twopoint") {
        auto args = split(rest, ',');
        if (args.size() != 3) throw config_error("twopoint spec needs LO,HI,P");
        return WeightDist::two_point(parse_num(trim(args[0]), "twopoint lo"),
                                     parse_num(trim(args[1]), "twopoint hi"),
                                     parse_num(trim(args[2]), "twopoint p"));
    }
    if (kind == "uniform") {
        auto args = split(rest, ',');
        if (args.size() != 2) throw config_error("uniform spec needs A,B");
        return WeightDist::uniform(parse_num(trim(args[0]), "uniform a"),
                                   parse_num(trim(args[1]), "uniform b"));
    }
    if (kind == "exp") {
        return WeightDist::exponential(parse_num(rest, "exp rate"));
    }
    if (kind == "empirical") {
        return load_empirical_csv(rest);
    }
    throw config_error("unknown distribution kind '" + kind + "'");
}

}  // namespace fpp
