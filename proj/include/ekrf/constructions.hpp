#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ekrf/setcore.hpp"

namespace ekrf {

/// All k-sets containing [t], plus all k-sets containing [2, t+ℓ-2] and
/// missing element 1. Requires 1 <= t, 3 <= ℓ, t+ℓ-2 <= k <= n and
/// n >= k+t+ℓ-3.
Family construct_thm6(int n, int k, int t, int ell);

/// The t = 1 construction with the interval shortened to [2, ℓ-s-1].
/// Requires ℓ >= 3, 2s+1 <= ℓ, ℓ-s-1 <= k <= n and n >= k+ℓ-s-2.
Family construct_thm8(int n, int k, int ell, int s);

/// All k-sets containing [t].
Family construct_star(int n, int k, int t);

/// Kernel [t]; petal i is the i-th block of k-t consecutive elements after t.
Family construct_sunflower(int n, int k, int t, int u);

struct ProfilePoint {
    int x = 0;
    long value = 0;
};

struct Profile {
    std::vector<ProfilePoint> points;
    long min_value = 0;
    std::vector<int> argmin;
    /// Vertex of the quadratic on the real line (metadata only).
    double real_argmin = 0.0;
};

/// f(x) = C(x,2)t + x(ℓ-x)(t-1) + C(ℓ-x,2)(t+ℓ-3) for x = 0..ℓ.
Profile f_profile(int t, int ell);

struct GProfile {
    Profile profile;
    long threshold = 0;            // C(ℓ-1,2) - s
    bool min_at_ell_minus_2 = false;
    bool min_meets_threshold = false;
    /// Set when 2s+1 > ℓ, where the shortened construction is not claimed to work.
    bool outside_hypothesis = false;
};

/// g(x) = C(x,2) + C(ℓ-x,2)(ℓ-s-2) for x = 0..ℓ.
GProfile g_profile(int ell, int s);

enum class BoundKind { Ekr, T3, T5, T6, T7, T8 };

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);

struct BoundParams {
    std::optional<int> n, k, t, ell, s;
};

/// Closed-form right-hand sides:
///   ekr  C(n-1,k-1)              t3  C(n-t,k-t)
///   t5   C(n-1,k-1)+C(n-ℓ+1,k-ℓ+2)
///   t6   C(n-t,k-t)+C(n-t-ℓ+2,k-t-ℓ+3)
///   t7   C(n,k)-C(n-ℓ+1,k)       t8  C(n-1,k-1)+C(n-ℓ+s+1,k-ℓ+s+2)
BigInt rhs_bound(BoundKind kind, const BoundParams& p);

}  // namespace ekrf
