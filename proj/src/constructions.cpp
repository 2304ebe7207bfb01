#include "ekrf/constructions.hpp"

#include <algorithm>

namespace ekrf {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError("hypothesis violated: " + what);
}

KSet interval(int n, int from, int to) {
    std::vector<int> e;
    for (int i = from; i <= to; ++i) e.push_back(i);
    return KSet(n, e);
}

long choose2(long x) { return x * (x - 1) / 2; }

// Binomials in these formulas can take negative upper arguments only when the
// lower one is out of range too; treat them as zero.
BigInt binom(long a, long b) { return a < 0 ? BigInt(0) : binomial(a, b); }

Profile make_profile(std::vector<ProfilePoint> pts) {
    Profile p;
    p.points = std::move(pts);
    p.min_value = p.points.front().value;
    for (const auto& pt : p.points) p.min_value = std::min(p.min_value, pt.value);
    for (const auto& pt : p.points)
        if (pt.value == p.min_value) p.argmin.push_back(pt.x);
    // Quadratic through x = 0, 1, 2.
    if (p.points.size() >= 3) {
        const double f0 = static_cast<double>(p.points[0].value);
        const double f1 = static_cast<double>(p.points[1].value);
        const double f2 = static_cast<double>(p.points[2].value);
        const double a = (f2 - 2 * f1 + f0) / 2;
        const double b = f1 - f0 - a;
        p.real_argmin = a != 0 ? -b / (2 * a) : static_cast<double>(p.argmin.front());
    }
    return p;
}

}  // namespace

Family construct_thm6(int n, int k, int t, int ell) {
    require(t >= 1, "1 <= t");
    require(ell >= 3, "3 <= ell");
    require(t + ell - 2 <= k, "t + ell - 2 <= k");
    require(k <= n, "k <= n");
    require(n >= k + t + ell - 3, "n >= k + t + ell - 3");
    const GroundParams gp(n, k);
    const KSet core = interval(n, 1, t);
    const KSet shifted = interval(n, 2, t + ell - 2);
    std::vector<KSet> members;
    for (const KSet& s : enumerate_ksets(gp)) {
        if (core.is_subset_of(s) || (shifted.is_subset_of(s) && !s.contains(1))) members.push_back(s);
    }
    return Family(gp, std::move(members));
}

Family construct_thm8(int n, int k, int ell, int s) {
    require(s >= 0, "s >= 0");
    require(ell >= 3, "3 <= ell");
    require(2 * s + 1 <= ell, "2s + 1 <= ell");
    require(ell - s - 1 <= k, "ell - s - 1 <= k");
    require(k <= n, "k <= n");
    require(n >= k + ell - s - 2, "n >= k + ell - s - 2");
    const GroundParams gp(n, k);
    const KSet shifted = interval(n, 2, ell - s - 1);
    std::vector<KSet> members;
    for (const KSet& set : enumerate_ksets(gp)) {
        if (set.contains(1) || shifted.is_subset_of(set)) members.push_back(set);
    }
    return Family(gp, std::move(members));
}

Family construct_star(int n, int k, int t) {
    require(t >= 0, "t >= 0");
    require(t <= k, "t <= k");
    require(k <= n, "k <= n");
    const GroundParams gp(n, k);
    const KSet core = interval(n, 1, t);
    std::vector<KSet> members;
    for (const KSet& s : enumerate_ksets(gp))
        if (core.is_subset_of(s)) members.push_back(s);
    return Family(gp, std::move(members));
}

Family construct_sunflower(int n, int k, int t, int u) {
    require(t >= 0, "t >= 0");
    require(t < k, "t < k");
    require(u >= 1, "u >= 1");
    require(n >= t + u * (k - t), "n >= t + u(k - t)");
    const GroundParams gp(n, k);
    std::vector<KSet> members;
    for (int i = 0; i < u; ++i) {
        std::vector<int> e;
        for (int j = 1; j <= t; ++j) e.push_back(j);
        const int base = t + i * (k - t);
        for (int j = 1; j <= k - t; ++j) e.push_back(base + j);
        members.emplace_back(n, e);
    }
    return Family(gp, std::move(members));
}

Profile f_profile(int t, int ell) {
    require(t >= 1, "t >= 1");
    require(ell >= 3, "ell >= 3");
    std::vector<ProfilePoint> pts;
    for (int x = 0; x <= ell; ++x) {
        const long v = choose2(x) * t + static_cast<long>(x) * (ell - x) * (t - 1) + choose2(ell - x) * (t + ell - 3);
        pts.push_back({x, v});
    }
    return make_profile(std::move(pts));
}

GProfile g_profile(int ell, int s) {
    require(ell >= 3, "ell >= 3");
    require(s >= 0, "s >= 0");
    std::vector<ProfilePoint> pts;
    for (int x = 0; x <= ell; ++x) pts.push_back({x, choose2(x) + choose2(ell - x) * (ell - s - 2)});
    GProfile g;
    g.profile = make_profile(std::move(pts));
    g.threshold = choose2(ell - 1) - s;
    const auto& am = g.profile.argmin;
    g.min_at_ell_minus_2 = std::find(am.begin(), am.end(), ell - 2) != am.end();
    g.min_meets_threshold = g.profile.min_value >= g.threshold;
    g.outside_hypothesis = 2 * s + 1 > ell;
    return g;
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::Ekr: return "ekr";
        case BoundKind::T3: return "t3";
        case BoundKind::T5: return "t5";
        case BoundKind::T6: return "t6";
        case BoundKind::T7: return "t7";
        case BoundKind::T8: return "t8";
    }
    return "?";
}

BoundKind parse_bound_kind(const std::string& name) {
    if (name == "ekr") return BoundKind::Ekr;
    if (name == "t3") return BoundKind::T3;
    if (name == "t5") return BoundKind::T5;
    if (name == "t6") return BoundKind::T6;
    if (name == "t7") return BoundKind::T7;
    if (name == "t8") return BoundKind::T8;
    throw ParameterError("unknown bound kind '" + name + "' (expected ekr|t3|t5|t6|t7|t8)");
}

BigInt rhs_bound(BoundKind kind, const BoundParams& p) {
    auto need = [&](const std::optional<int>& v, const char* name) -> long {
        if (!v) throw ParameterError("bound " + to_string(kind) + " needs parameter " + name);
        return *v;
    };
    const long n = need(p.n, "n");
    const long k = need(p.k, "k");
    switch (kind) {
        case BoundKind::Ekr: return binom(n - 1, k - 1);
        case BoundKind::T3: {
            const long t = need(p.t, "t");
            return binom(n - t, k - t);
        }
        case BoundKind::T5: {
            const long l = need(p.ell, "ell");
            return binom(n - 1, k - 1) + binom(n - l + 1, k - l + 2);
        }
        case BoundKind::T6: {
            const long t = need(p.t, "t");
            const long l = need(p.ell, "ell");
            return binom(n - t, k - t) + binom(n - t - l + 2, k - t - l + 3);
        }
        case BoundKind::T7: {
            const long l = need(p.ell, "ell");
            return binom(n, k) - binom(n - l + 1, k);
        }
        case BoundKind::T8: {
            const long l = need(p.ell, "ell");
            const long s = need(p.s, "s");
            return binom(n - 1, k - 1) + binom(n - l + s + 1, k - l + s + 2);
        }
    }
    return 0;
}

}  // namespace ekrf
