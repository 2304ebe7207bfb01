#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ekrf/setcore.hpp"

namespace ekrf {

/// (n, k, t, ℓ) for the t-intersecting construction, or (n, k, 1, ℓ, s) for
/// the shortened-interval construction.
struct GridPoint {
    int n = 0;
    int k = 0;
    int t = 1;
    int ell = 3;
    std::optional<int> s;
};

struct ReportRow {
    GridPoint point;
    std::optional<BigInt> bound;
    std::optional<std::size_t> construction;
    std::optional<std::size_t> solver_best;
    std::optional<bool> optimal;
    /// "=" solver optimum equals the closed form, ">" exceeds it, "?" unproven,
    /// "-" not solved, "!" error.
    std::string marker;
    std::string error;
};

struct ReportOptions {
    bool solve = true;
    double time_limit = 5.0;
    std::uint64_t node_cap = 0;
};

/// Lines of comma-separated `n,k,t,ell[,s]`; blank lines and `#` comments skipped.
std::vector<GridPoint> parse_grid(std::string_view text);

std::vector<ReportRow> report(const std::vector<GridPoint>& grid, const ReportOptions& opts = {});

/// Fixed columns: n,k,t,ell,s,bound,construction,solver_best,optimal,marker,error
std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_text(const std::vector<ReportRow>& rows);

}  // namespace ekrf
