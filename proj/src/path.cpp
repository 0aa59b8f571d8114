#include "fpp/path.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace fpp {

long long ceil_slope(double v, long long n) {
    double x = v * static_cast<double>(n);
    double r = std::nearbyint(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

bool LatticePath::is_semidirected() const {
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        long long dx = vertices[i].first - vertices[i - 1].first;
        long long dy = vertices[i].second - vertices[i - 1].second;
        if (!((dx == 1 && dy == 0) || (dx == 0 && (dy == 1 || dy == -1)))) return false;
    }
    return true;
}

void LatticePath::validate() const {
    if (vertices.empty()) throw domain_error("path: empty vertex list");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        long long dx = vertices[i].first - vertices[i - 1].first;
        long long dy = vertices[i].second - vertices[i - 1].second;
        if (std::llabs(dx) + std::llabs(dy) != 1)
            throw domain_error("path: vertices " + std::to_string(i - 1) + "," +
                               std::to_string(i) + " not adjacent");
    }
}

PioneerVector make_pioneer(std::vector<long long> gamma, double v) {
    if (gamma.size() < 2) throw domain_error("pioneer vector needs length >= 2");
    if (gamma.front() != 0) throw domain_error("pioneer vector must start at height 0");
    long long n = static_cast<long long>(gamma.size()) - 2;
    if (n >= 1 && ceil_slope(v, n) != gamma.back())
        throw domain_error("pioneer endpoint does not match ceil(v*n)");
    PioneerVector g;
    g.gamma = std::move(gamma);
    g.n = n;
    g.v = v;
    return g;
}

PioneerVector pioneer_vector(const LatticePath& p, long long n, long long m) {
    p.validate();
    if (!p.is_semidirected()) throw domain_error("pioneer_vector: path is not semi-directed");
    if (p.vertices.front() != std::make_pair(0LL, 0LL) ||
        p.vertices.back() != std::make_pair(n, m))
        throw domain_error("pioneer_vector: endpoints are not (0,0) and (n,m)");
    PioneerVector g;
    g.n = n;
    g.v = n > 0 ? static_cast<double>(m) / static_cast<double>(n) : static_cast<double>(m);
    g.gamma.reserve(static_cast<std::size_t>(n) + 2);
    long long next_col = 0;
    for (const auto& [x, y] : p.vertices) {
        if (x == next_col) {
            g.gamma.push_back(y);  // first entry into column x
            ++next_col;
        }
    }
    if (next_col != n + 1) throw domain_error("pioneer_vector: path misses a column");
    g.gamma.push_back(m);
    return g;
}

LatticePath path_from_pioneer(const PioneerVector& g) {
    LatticePath p;
    long long y = 0;
    p.vertices.emplace_back(0, 0);
    for (long long k = 0; k <= g.n; ++k) {
        long long target = g.gamma[static_cast<std::size_t>(k) + 1];
        while (y != target) {
            y += target > y ? 1 : -1;
            p.vertices.emplace_back(k, y);
        }
        if (k < g.n) p.vertices.emplace_back(k + 1, y);
    }
    return p;
}

double passage_time_A(const PioneerVector& g, const Environment& env) {
    // fixed summation order: all vertical terms (exact integer total), then
    // F_1..F_n in column order; identities over this functional compare
    // bit-exactly against any other sum with the same order
    long long vert = 0;
    for (long long k = 0; k <= g.n; ++k)
        vert += std::llabs(g.gamma[static_cast<std::size_t>(k) + 1] -
                           g.gamma[static_cast<std::size_t>(k)]);
    double t = static_cast<double>(vert);
    for (long long k = 1; k <= g.n; ++k)
        t += env.horizontal_weight(k, g.gamma[static_cast<std::size_t>(k)]);
    return t;
}

TurnStats turn_stats(const PioneerVector& g) {
    TurnStats s;
    for (long long k = 0; k <= g.n; ++k) {
        long long d = g.gamma[static_cast<std::size_t>(k) + 1] -
                      g.gamma[static_cast<std::size_t>(k)];
        if (d > 0)
            ++s.U;
        else if (d == 0)
            ++s.R;
        else
            ++s.D;
    }
    if (s.U + s.R + s.D != g.n + 1) throw std::logic_error("turn counts must total n+1");
    return s;
}

StripStats strip_slope_stats(const PioneerVector& g, long long K, double eps) {
    const long long n = g.n;
    if (n < 1 || K < 1 || n % K != 0)
        throw domain_error("strip_slope_stats: K must divide n >= 1");
    if (!(eps > 0)) throw domain_error("strip_slope_stats: eps must be positive");
    const long long m = g.gamma.back();
    const double v_n = static_cast<double>(m) / static_cast<double>(n);

    // pioneer heights with the endpoint height substituted at x = n
    auto fstar = [&](long long x) {
        return x == n ? m : g.gamma[static_cast<std::size_t>(x)];
    };
    long long slow = 0;
    const long long strips = n / K;
    for (long long i = 0; i < strips; ++i) {
        long long inc = fstar(K * (i + 1)) - fstar(K * i);
        if (static_cast<double>(inc) <= static_cast<double>(K) * (v_n + eps)) ++slow;
    }
    StripStats out;
    out.eta = static_cast<double>(K) / static_cast<double>(n) * static_cast<double>(slow);
    for (long long k = 0; k <= n; ++k) {
        long long d = g.gamma[static_cast<std::size_t>(k) + 1] -
                      g.gamma[static_cast<std::size_t>(k)];
        if (d < 0) out.down_edges += -d;
    }
    // for m >= 0 every path provably has either many down edges or many slow
    // strips, so a violation indicates an implementation bug
    if (m >= 0) {
        bool many_down =
            static_cast<double>(out.down_edges) >= eps * static_cast<double>(n) /
                                                       (2.0 * static_cast<double>(K));
        bool many_slow = out.eta > eps / (2.0 * (v_n + eps));
        if (!many_down && !many_slow)
            throw std::logic_error("strip statistics dichotomy violated");
    }
    return out;
}

namespace {

struct VertexHash {
    std::size_t operator()(const std::pair<long long, long long>& p) const {
        auto a = static_cast<unsigned long long>(p.first);
        auto b = static_cast<unsigned long long>(p.second);
        return static_cast<std::size_t>(a * 0x9e3779b97f4a7c15ULL ^ (b + 0x7f4a7c15ULL));
    }
};

LatticePath loop_erase(const LatticePath& p) {
    LatticePath out;
    std::unordered_map<std::pair<long long, long long>, std::size_t, VertexHash> seen;
    for (const auto& v : p.vertices) {
        auto it = seen.find(v);
        if (it != seen.end()) {
            // splice back to the first visit
            for (std::size_t i = it->second + 1; i < out.vertices.size(); ++i)
                seen.erase(out.vertices[i]);
            out.vertices.resize(it->second + 1);
        } else {
            out.vertices.push_back(v);
            seen.emplace(v, out.vertices.size() - 1);
        }
    }
    return out;
}

}  // namespace

LatticePath normalize_to_semidirected(const LatticePath& p) {
    p.validate();
    if (p.vertices.back().first < p.vertices.front().first)
        throw domain_error("normalize: endpoint column must not precede the start column");
    LatticePath cur = loop_erase(p);
    for (;;) {
        std::size_t left = cur.vertices.size();
        for (std::size_t i = 0; i + 1 < cur.vertices.size(); ++i) {
            if (cur.vertices[i + 1].first < cur.vertices[i].first) {
                left = i;
                break;
            }
        }
        if (left == cur.vertices.size()) break;
        // first return to the column where the left step started; it exists
        // because the endpoint lies weakly to the right
        const long long col = cur.vertices[left].first;
        std::size_t ret = left + 1;
        while (cur.vertices[ret].first != col) ++ret;
        // replace the excursion by a vertical segment (costs |dy| <= the
        // excursion's own vertical edge count, so time never increases)
        LatticePath next;
        next.vertices.assign(cur.vertices.begin(), cur.vertices.begin() + left + 1);
        long long y = cur.vertices[left].second;
        const long long ytarget = cur.vertices[ret].second;
        while (y != ytarget) {
            y += ytarget > y ? 1 : -1;
            next.vertices.emplace_back(col, y);
        }
        next.vertices.insert(next.vertices.end(), cur.vertices.begin() + ret + 1,
                             cur.vertices.end());
        cur = loop_erase(next);
    }
    return cur;
}

}  // namespace fpp
