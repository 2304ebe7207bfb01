#pragma once

// Brute-force reference implementations. They share no code with the library
// and work on plain sorted element vectors.

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Set = std::vector<int>;

inline std::vector<Set> all_ksets(int n, int k) {
    std::vector<Set> out;
    Set cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int e = next; e <= n; ++e) {
            cur.push_back(e);
            rec(e + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

inline int inter(const Set& a, const Set& b) {
    int c = 0;
    for (int x : a) c += static_cast<int>(std::count(b.begin(), b.end(), x));
    return c;
}

inline std::uint64_t binom(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0;
    std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(a) + 1);
    for (int i = 0; i <= a; ++i) {
        c[i].assign(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c[a][b];
}

struct MinResult {
    long value;
    std::vector<std::size_t> witness;
};

// Minimum pair-sum over all ell-subsets, lexicographically least witness.
inline MinResult min_pairsum(const std::vector<Set>& fam, int ell) {
    MinResult best{-1, {}};
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (static_cast<int>(idx.size()) == ell) {
            long s = 0;
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j) s += inter(fam[idx[i]], fam[idx[j]]);
            if (best.value < 0 || s < best.value) best = {s, idx};
            return;
        }
        for (std::size_t v = next; v < fam.size(); ++v) {
            idx.push_back(v);
            rec(v + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return best;
}

inline bool disjoint(const Set& a, const Set& b) { return inter(a, b) == 0; }

// Maximum number of pairwise disjoint members over all 2^m subsets.
inline int matching_number(const std::vector<Set>& fam) {
    const std::size_t m = fam.size();
    int best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        const int bits = std::popcount(mask);
        if (bits <= best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            if (mask >> i & 1)
                for (std::size_t j = i + 1; j < m && ok; ++j)
                    if (mask >> j & 1 && !disjoint(fam[i], fam[j])) ok = false;
        if (ok) best = bits;
    }
    return best;
}

// Largest subfamily of all k-sets of [n] where every tuple of `tuple_size`
// members has pair-sum >= thr. Include/exclude recursion over all subsets,
// abandoning a branch as soon as the chosen members violate the condition.
inline std::size_t max_family(int n, int k, int tuple_size, long thr) {
    const auto cands = all_ksets(n, k);
    std::vector<std::size_t> chosen;
    std::size_t best = 0;
    auto feasible_with = [&](std::size_t v) {
        if (static_cast<int>(chosen.size()) < tuple_size - 1) return true;
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> rec = [&](std::size_t next) {
            if (static_cast<int>(pick.size()) == tuple_size - 1) {
                long s = 0;
                for (std::size_t i = 0; i < pick.size(); ++i) {
                    s += inter(cands[chosen[pick[i]]], cands[v]);
                    for (std::size_t j = i + 1; j < pick.size(); ++j)
                        s += inter(cands[chosen[pick[i]]], cands[chosen[pick[j]]]);
                }
                return s >= thr;
            }
            for (std::size_t i = next; i < chosen.size(); ++i) {
                pick.push_back(i);
                if (!rec(i + 1)) return false;
                pick.pop_back();
            }
            return true;
        };
        return rec(0);
    };
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (chosen.size() + (cands.size() - v) <= best) return;
        if (v == cands.size()) {
            best = chosen.size();
            return;
        }
        if (feasible_with(v)) {
            chosen.push_back(v);
            rec(v + 1);
            chosen.pop_back();
        }
        rec(v + 1);
    };
    rec(0);
    return best;
}

// DIMACS parsing plus a plain DPLL with unit propagation.
struct Cnf {
    int vars = 0;
    std::vector<std::vector<int>> clauses;
};

inline Cnf parse_dimacs(const std::string& text) {
    Cnf cnf;
    std::istringstream in(text);
    std::string line;
    std::vector<int> cur;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream h(line);
            std::string p, fmt;
            std::size_t count = 0;
            h >> p >> fmt >> cnf.vars >> count;
            continue;
        }
        std::istringstream l(line);
        int lit;
        while (l >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(lit);
            }
        }
    }
    return cnf;
}

inline bool dpll(const Cnf& cnf) {
    std::vector<int> val(static_cast<std::size_t>(cnf.vars) + 1, 0);
    std::function<bool()> solve = [&]() -> bool {
        std::vector<int> trail;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : cnf.clauses) {
                int unassigned = 0, last = 0;
                bool sat = false;
                for (int lit : c) {
                    const int v = val[static_cast<std::size_t>(std::abs(lit))];
                    if (v == 0) {
                        ++unassigned;
                        last = lit;
                    } else if ((v > 0) == (lit > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) {
                    for (int v : trail) val[static_cast<std::size_t>(v)] = 0;
                    return false;
                }
                if (unassigned == 1) {
                    val[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
                    trail.push_back(std::abs(last));
                    changed = true;
                }
            }
        }
        int branch = 0;
        for (int v = 1; v <= cnf.vars; ++v)
            if (val[static_cast<std::size_t>(v)] == 0) {
                branch = v;
                break;
            }
        if (branch == 0) return true;
        for (int sign : {1, -1}) {
            val[static_cast<std::size_t>(branch)] = sign;
            if (solve()) return true;
        }
        val[static_cast<std::size_t>(branch)] = 0;
        for (int v : trail) val[static_cast<std::size_t>(v)] = 0;
        return false;
    };
    return solve();
}

}  // namespace oracle
