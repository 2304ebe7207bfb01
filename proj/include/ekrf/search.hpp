#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekrf/conditions.hpp"
#include "ekrf/setcore.hpp"

namespace ekrf {

enum class Symmetry { None, ElementOrder };

struct SearchOptions {
    double time_limit = 0.0;                  // seconds, 0 = unlimited
    std::optional<Family> incumbent;
    std::uint64_t node_cap = 0;               // 0 = unlimited
    Symmetry symmetry = Symmetry::None;
    /// Plain subset enumeration instead of branch and bound; only allowed
    /// when C(n,k) <= exhaustive_threshold.
    bool exhaustive = false;
    std::uint64_t exhaustive_threshold = 24;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

struct SearchResult {
    Family best;
    std::size_t size = 0;
    bool optimal = false;
    std::uint64_t nodes = 0;
    double elapsed = 0.0;
    /// Proven upper bound on any feasible family.
    std::uint64_t bound = 0;
};

/// Chosen members plus their pairwise intersection sizes; answers whether a
/// further member keeps every ℓ-tuple at or above the threshold.
class SearchState {
public:
    SearchState(GroundParams params, const ConditionSpec& spec);

    /// True iff every tuple made of the candidate and tuple_size-1 chosen
    /// members reaches the threshold.
    bool incremental_feasible(const KSet& candidate) const;
    void add(const KSet& member);

    const std::vector<KSet>& members() const noexcept { return members_; }
    long threshold() const noexcept { return threshold_; }

private:
    GroundParams params_;
    int tuple_size_;
    long threshold_;
    std::vector<KSet> members_;
    std::vector<std::vector<int>> overlap_;
};

SearchResult max_family(const GroundParams& params, const ConditionSpec& spec, const SearchOptions& opts = {});

struct ExportOptions {
    std::uint64_t tuple_cap = 1'000'000;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

/// Tuples of candidate indices (lexicographic k-set order) whose pair-sum is
/// below the threshold. Throws CapExceeded past `tuple_cap`.
std::vector<std::vector<std::size_t>> bad_tuples(const std::vector<KSet>& candidates, const ConditionSpec& spec,
                                                 std::uint64_t tuple_cap);

/// CPLEX LP text: maximize Σ x_i subject to Σ_{i∈T} x_i <= |T|-1 per bad tuple.
std::string export_ilp(const GroundParams& params, const ConditionSpec& spec, const ExportOptions& opts = {});

/// DIMACS CNF: one blocking clause per bad tuple plus a totalizer asserting
/// at least `target_size` chosen candidates.
std::string export_cnf(const GroundParams& params, const ConditionSpec& spec, long target_size,
                       const ExportOptions& opts = {});

}  // namespace ekrf
