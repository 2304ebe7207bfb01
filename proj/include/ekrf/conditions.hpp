#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ekrf/setcore.hpp"

namespace ekrf {

/// Which lower bound the ℓ-wise pair-sum must clear.
///   Eq2       C(ℓ-1,2) + 1                        (t = 1)
///   Eq3       C(ℓ,2)(t-1) + C(ℓ-1,2) + 1
///   Eq4       C(ℓ,2)(t-1) + C(ℓ-1,2)               (ℓ >= 3)
///   Eq10      C(ℓ-1,2) - s                         (t = 1, 2s+1 <= ℓ)
///   PairwiseT every pair meets in >= t elements
enum class Variant { Eq2, Eq3, Eq4, Eq10, PairwiseT };

std::string to_string(Variant v);
/// Accepts eq2, eq3, eq4, eq10, pairwise (case-sensitive).
Variant parse_variant(const std::string& name);

struct ConditionSpec {
    int t = 1;
    int ell = 2;
    Variant variant = Variant::Eq4;
    int slack = 0;

    /// Throws ParameterError naming the violated hypothesis.
    void validate() const;

    /// Number of members in a constrained tuple (2 for PairwiseT).
    int tuple_size() const { return variant == Variant::PairwiseT ? 2 : ell; }
};

long threshold(const ConditionSpec& spec);

struct Violation {
    std::vector<std::size_t> indices;
    long pair_sum = 0;
    long threshold = 0;
};

struct MinPairSum {
    long value = 0;
    std::vector<std::size_t> witness;
};

struct MinPairSumOptions {
    /// Only tuples with pair-sum strictly below the cutoff are of interest;
    /// when none exists the search reports std::nullopt.
    std::optional<long> cutoff;
    unsigned threads = 1;
    /// C(m, ℓ) at or below this is enumerated exhaustively.
    std::uint64_t exhaustive_limit = 10'000'000;
};

/// Σ |F_i ∩ F_j| over unordered pairs of the indexed members.
long pair_sum(const Family& family, std::span<const std::size_t> tuple);

/// Exact minimum pair-sum over all ℓ-member subfamilies with the
/// lexicographically least minimizing index tuple.
MinPairSum min_pairsum(const Family& family, int ell, const MinPairSumOptions& opts = {});

/// As min_pairsum, but returns nullopt when every ℓ-tuple reaches the cutoff.
std::optional<MinPairSum> min_pairsum_below(const Family& family, int ell, long cutoff,
                                            const MinPairSumOptions& opts = {});

/// Branch-and-bound and exhaustive routes, exposed for cross-checking.
std::optional<MinPairSum> min_pairsum_bnb(const Family& family, int ell, std::optional<long> cutoff,
                                          unsigned threads = 1);
std::optional<MinPairSum> min_pairsum_exhaustive(const Family& family, int ell,
                                                 std::optional<long> cutoff);

struct CheckOptions {
    /// Also compute the exact minimum when the condition holds.
    bool exact_min = false;
    unsigned threads = 1;
};

struct CheckResult {
    bool ok = true;
    long threshold = 0;
    /// Exact minimum over tuples; set on violation, or on success when
    /// requested and at least one tuple exists.
    std::optional<long> min_pairsum;
    std::optional<Violation> violation;
};

CheckResult check_condition(const Family& family, const ConditionSpec& spec, const CheckOptions& opts = {});

/// Recomputes a violation record against the family; true iff consistent.
bool reverify(const Family& family, const Violation& v);

}  // namespace ekrf
