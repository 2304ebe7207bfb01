#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ekrf/setcore.hpp"

namespace ekrf {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// nullopt when every pair meets in >= t elements, else the least failing pair.
std::optional<IndexPair> is_t_intersecting(const Family& family, int t);

/// nullopt when every (A_i, B_j) meets in >= r elements, else the least failing
/// (i, j). Throws ParameterError for mismatched ground sets.
std::optional<IndexPair> is_cross_intersecting(const Family& a, const Family& b, int r);

struct Matching {
    int nu = 0;
    /// Lexicographically least maximum set of pairwise disjoint members.
    std::vector<std::size_t> witness;
};

Matching matching_number(const Family& family);

struct Sunflower {
    KSet kernel;
    std::vector<std::size_t> member_indices;
    int petal_count = 0;
};

/// Lexicographically least kernel of size exactly t carrying a sunflower with
/// u petals; the members are the least such index set for that kernel.
std::optional<Sunflower> find_sunflower(const Family& family, int t, int u);

/// True when the indexed members contain the kernel and meet pairwise in it exactly.
bool is_sunflower(const Family& family, const Sunflower& s);

struct Decomposition {
    KSet kernel;
    Family f_t;                                  // members containing T
    std::map<int, Family> f_minus;               // a -> members ⊇ T-{a}, a ∉ member
    Family leftover;                             // |member ∩ T| < t-1
    std::vector<std::size_t> idx_t;
    std::map<int, std::vector<std::size_t>> idx_minus;
    std::vector<std::size_t> idx_leftover;
};

Decomposition kernel_decompose(const Family& family, const KSet& kernel);

struct AuditCheck {
    bool pass = true;
    std::string detail;
    std::vector<std::size_t> witness;            // host-family indices
};

struct AuditReport {
    bool case1 = false;                          // a kernel was available
    std::optional<Sunflower> sunflower;
    std::optional<Decomposition> decomposition;
    AuditCheck kernel_meeting;                   // every |F ∩ T| >= t-1
    AuditCheck residual_intersecting;            // each F(T-{a},ā) is (t+ℓ-3)-intersecting
    AuditCheck residual_cross;                   // residual pairs (ℓ-1)-cross-intersecting

    bool all_pass() const {
        return kernel_meeting.pass && residual_intersecting.pass && residual_cross.pass;
    }
};

struct AuditOptions {
    /// Use this kernel instead of searching for a sunflower with 2k+ℓ-2 petals.
    std::optional<KSet> kernel;
    /// Throw std::logic_error if a check fails while a kernel is in hand.
    bool strict = false;
};

AuditReport lemma_audit(const Family& family, int t, int ell, const AuditOptions& opts = {});

}  // namespace ekrf
