#include "ekrf/conditions.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace ekrf {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Eq2: return "eq2";
        case Variant::Eq3: return "eq3";
        case Variant::Eq4: return "eq4";
        case Variant::Eq10: return "eq10";
        case Variant::PairwiseT: return "pairwise";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    if (name == "eq2") return Variant::Eq2;
    if (name == "eq3") return Variant::Eq3;
    if (name == "eq4") return Variant::Eq4;
    if (name == "eq10") return Variant::Eq10;
    if (name == "pairwise") return Variant::PairwiseT;
    throw ParameterError("unknown variant '" + name + "' (expected eq2|eq3|eq4|eq10|pairwise)");
}

void ConditionSpec::validate() const {
    if (t < 1) throw ParameterError("t must be positive");
    if (slack < 0) throw ParameterError("slack s must be nonnegative");
    if (variant == Variant::PairwiseT) return;
    if (ell < 2) throw ParameterError("ell must be at least 2");
    switch (variant) {
        case Variant::Eq2:
            if (t != 1) throw ParameterError("eq2 is stated for t = 1");
            break;
        case Variant::Eq4:
            if (ell < 3) throw ParameterError("eq4 requires ell >= 3");
            break;
        case Variant::Eq10:
            if (t != 1) throw ParameterError("eq10 is stated for t = 1");
            if (2 * slack + 1 > ell) throw ParameterError("eq10 requires 2s + 1 <= ell");
            break;
        default:
            break;
    }
}

namespace {
long choose2(long x) { return x * (x - 1) / 2; }
}  // namespace

long threshold(const ConditionSpec& spec) {
    spec.validate();
    const long l = spec.ell;
    const long t = spec.t;
    switch (spec.variant) {
        case Variant::Eq2: return choose2(l - 1) + 1;
        case Variant::Eq3: return choose2(l) * (t - 1) + choose2(l - 1) + 1;
        case Variant::Eq4: return choose2(l) * (t - 1) + choose2(l - 1);
        case Variant::Eq10: return choose2(l - 1) - spec.slack;
        case Variant::PairwiseT: return t;
    }
    return 0;
}

long pair_sum(const Family& family, std::span<const std::size_t> tuple) {
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] >= family.size()) throw ParameterError("tuple index out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (tuple[i] == tuple[j]) throw ParameterError("duplicate index in tuple");
    }
    long sum = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) sum += overlap(family[tuple[i]], family[tuple[j]]);
    return sum;
}

namespace {

constexpr long kInfinity = std::numeric_limits<long>::max() / 4;
constexpr std::size_t kRowTableLimit = 8000;
constexpr std::uint8_t kNoEdge = 255;

struct Words {
    std::vector<std::uint64_t> lo, hi;
    explicit Words(const Family& f) {
        lo.reserve(f.size());
        hi.reserve(f.size());
        for (const KSet& s : f) {
            lo.push_back(s.lo());
            hi.push_back(s.hi());
        }
    }
    int overlap(std::size_t a, std::size_t b) const {
        return std::popcount(lo[a] & lo[b]) + std::popcount(hi[a] & hi[b]);
    }
};

void check_args(const Family& family, int ell) {
    if (ell < 2) throw ParameterError("ell must be at least 2");
    if (family.size() < static_cast<std::size_t>(ell))
        throw ParameterError("family has " + std::to_string(family.size()) + " members, fewer than ell=" +
                             std::to_string(ell));
}

// Greedy ℓ-tuple from a few low-load starting members: an upper bound on the
// minimum used to seed pruning.
long greedy_upper_bound(const Words& w, std::size_t m, int ell) {
    std::vector<std::size_t> starts;
    if (m <= 20000) {
        std::vector<long> row(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const int o = w.overlap(i, j);
                row[i] += o;
                row[j] += o;
            }
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
        starts.assign(order.begin(), order.begin() + static_cast<long>(std::min<std::size_t>(m, 16)));
    } else {
        for (std::size_t i = 0; i < std::min<std::size_t>(m, 16); ++i) starts.push_back(i);
    }

    long best = kInfinity;
    std::vector<char> used(m);
    std::vector<long> cost(m);
    for (std::size_t s : starts) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(cost.begin(), cost.end(), 0);
        used[s] = 1;
        long total = 0;
        std::size_t last = s;
        for (int r = 1; r < ell; ++r) {
            std::size_t pick = m;
            for (std::size_t v = 0; v < m; ++v) {
                if (used[v]) continue;
                cost[v] += w.overlap(last, v);
                if (pick == m || cost[v] < cost[pick]) pick = v;
            }
            used[pick] = 1;
            total += cost[pick];
            last = pick;
        }
        best = std::min(best, total);
    }
    return best;
}

class BranchAndBound {
public:
    BranchAndBound(const Family& family, int ell)
        : w_(family), m_(family.size()), n_(family.params().n), k_(family.params().k), ell_(ell) {
        const auto nn = static_cast<std::size_t>(n_);
        suffix_.assign((m_ + 1) * nn, 0);
        for (std::size_t p = m_; p-- > 0;) {
            std::copy_n(suffix_.begin() + static_cast<long>((p + 1) * nn), nn, suffix_.begin() + static_cast<long>(p * nn));
            for (int e : family[p].elements()) ++suffix_[p * nn + static_cast<std::size_t>(e - 1)];
        }
        min_edge_suffix_.assign(m_ + 1, kInfinity);
        if (m_ <= 20000) {
            for (std::size_t p = m_; p-- > 0;) {
                long row_min = kInfinity;
                for (std::size_t j = p + 1; j < m_; ++j) row_min = std::min<long>(row_min, w_.overlap(p, j));
                min_edge_suffix_[p] = std::min(row_min, min_edge_suffix_[p + 1]);
            }
        } else {
            std::fill(min_edge_suffix_.begin(), min_edge_suffix_.end(), 0);
        }
        if (m_ <= kRowTableLimit) {
            row_suffix_min_.assign(m_ * (m_ + 1), kNoEdge);
            for (std::size_t c = 0; c < m_; ++c) {
                std::uint8_t* row = row_suffix_min_.data() + c * (m_ + 1);
                for (std::size_t p = m_; p-- > 0;) {
                    row[p] = row[p + 1];
                    if (p != c) row[p] = std::min<std::uint8_t>(row[p], static_cast<std::uint8_t>(w_.overlap(c, p)));
                }
            }
        }
    }

    std::optional<MinPairSum> run(long seed, unsigned threads) {
        if (threads <= 1) {
            Worker wk(*this, seed);
            std::atomic<long> shared{seed};
            wk.shared = &shared;
            wk.node(0, 0, 0);
            if (wk.witness.empty()) return std::nullopt;
            return MinPairSum{wk.best, wk.witness};
        }

        // One task per first member. Each task keeps ties (so the least
        // first index can win deterministically) and prunes strictly worse
        // branches against the shared best.
        std::atomic<long> shared{seed};
        std::atomic<std::size_t> next{0};
        const std::size_t last_first = m_ - static_cast<std::size_t>(ell_);
        std::vector<std::optional<MinPairSum>> results(last_first + 1);
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t first = next++; first <= last_first; first = next++) {
                    const long cur = shared.load();
                    Worker wk(*this, cur >= kInfinity ? cur : std::min(seed, cur + 1));
                    wk.shared = &shared;
                    wk.push(first);
                    wk.node(1, first + 1, 0);
                    if (!wk.witness.empty()) {
                        results[first] = MinPairSum{wk.best, wk.witness};
                        long expected = shared.load();
                        while (wk.best < expected && !shared.compare_exchange_weak(expected, wk.best)) {
                        }
                    }
                }
            });
        }
        pool.clear();
        std::optional<MinPairSum> out;
        for (auto& r : results)
            if (r && (!out || r->value < out->value)) out = std::move(r);
        return out;
    }

private:
    struct Worker {
        const BranchAndBound& bb;
        long best;
        std::vector<std::size_t> witness;
        std::vector<std::size_t> chosen;
        std::array<int, kMaxGroundSize> degree{};
        std::atomic<long>* shared = nullptr;

        Worker(const BranchAndBound& b, long seed) : bb(b), best(seed) { chosen.reserve(static_cast<std::size_t>(b.ell_)); }

        void push(std::size_t v) {
            chosen.push_back(v);
            adjust(v, +1);
        }
        void pop() {
            adjust(chosen.back(), -1);
            chosen.pop_back();
        }
        void adjust(std::size_t v, int delta) {
            for (std::uint64_t x = bb.w_.lo[v]; x; x &= x - 1) degree[static_cast<std::size_t>(std::countr_zero(x))] += delta;
            for (std::uint64_t x = bb.w_.hi[v]; x; x &= x - 1) degree[static_cast<std::size_t>(64 + std::countr_zero(x))] += delta;
        }
        long cost_of(std::size_t v) const {
            long c = 0;
            for (std::size_t u : chosen) c += bb.w_.overlap(u, v);
            return c;
        }
        bool pruned(long bound) const { return bound >= best || bound > shared->load(std::memory_order_relaxed); }

        // Cheapest way to place rem·k more element incidences, given that
        // raising an element's degree from d to d+1 adds d to the pair-sum
        // and each element can gain at most min(rem, #later members holding it).
        long degree_bound(std::size_t start, int rem) const {
            std::array<long, kMaxGroundSize + 2> hist{};
            const std::size_t nn = static_cast<std::size_t>(bb.n_);
            const std::uint32_t* cnt = bb.suffix_.data() + start * nn;
            long available = 0;
            for (std::size_t x = 0; x < nn; ++x) {
                const int cap = static_cast<int>(std::min<std::uint32_t>(static_cast<std::uint32_t>(rem), cnt[x]));
                for (int j = 0; j < cap; ++j) ++hist[static_cast<std::size_t>(degree[x] + j)];
                available += cap;
            }
            long need = static_cast<long>(rem) * bb.k_;
            if (available < need) return kInfinity;
            long total = 0;
            for (std::size_t level = 0; need > 0; ++level) {
                const long take = std::min(need, hist[level]);
                total += take * static_cast<long>(level);
                need -= take;
            }
            return total;
        }

        void node(int depth, std::size_t start, long partial) {
            const int rem = bb.ell_ - depth;
            const std::size_t m = bb.m_;
            if (rem == 1) {
                if (!bb.row_suffix_min_.empty() && start < m) {
                    long cross = 0;
                    for (std::size_t c : chosen) cross += bb.row_suffix_min_[c * (m + 1) + start];
                    if (partial + cross >= best) return;
                }
                for (std::size_t v = start; v < m; ++v) {
                    const long c = partial + cost_of(v);
                    if (c < best) {
                        best = c;
                        witness = chosen;
                        witness.push_back(v);
                        if (best == partial) return;
                    }
                }
                return;
            }
            if (start + static_cast<std::size_t>(rem) > m) return;
            const long inner = bb.min_edge_suffix_[start] >= kInfinity ? 0 : choose2(rem) * bb.min_edge_suffix_[start];
            long cross = 0;
            if (!bb.row_suffix_min_.empty())
                for (std::size_t c : chosen) cross += bb.row_suffix_min_[c * (m + 1) + start];
            const long lb = partial + std::max(degree_bound(start, rem), inner + rem * cross);
            if (pruned(lb)) return;
            for (std::size_t v = start; v + static_cast<std::size_t>(rem) <= m; ++v) {
                const long c = partial + cost_of(v);
                if (pruned(c)) continue;
                push(v);
                node(depth + 1, v + 1, c);
                pop();
                if (pruned(lb)) return;
            }
        }
    };

    Words w_;
    std::size_t m_;
    int n_;
    int k_;
    int ell_;
    std::vector<std::uint32_t> suffix_;
    std::vector<long> min_edge_suffix_;
    // row_suffix_min_[c*(m+1)+p] = min over j >= p, j != c of |F_c ∩ F_j|.
    std::vector<std::uint8_t> row_suffix_min_;
};

}  // namespace

std::optional<MinPairSum> min_pairsum_bnb(const Family& family, int ell, std::optional<long> cutoff,
                                          unsigned threads) {
    check_args(family, ell);
    const Words w(family);
    long seed = greedy_upper_bound(w, family.size(), ell) + 1;
    if (cutoff) seed = std::min(seed, *cutoff);
    BranchAndBound bb(family, ell);
    return bb.run(seed, threads);
}

std::optional<MinPairSum> min_pairsum_exhaustive(const Family& family, int ell, std::optional<long> cutoff) {
    check_args(family, ell);
    const Words w(family);
    const std::size_t m = family.size();
    const auto L = static_cast<std::size_t>(ell);
    long best = cutoff.value_or(kInfinity);
    std::vector<std::size_t> witness;
    std::vector<std::size_t> idx(L);
    std::vector<long> partial(L + 1, 0);

    // Lexicographic combination walk with prefix pair-sums.
    std::size_t depth = 0;
    idx[0] = 0;
    while (true) {
        if (idx[depth] + (L - depth) > m) {
            if (depth == 0) break;
            --depth;
            ++idx[depth];
            continue;
        }
        long add = 0;
        for (std::size_t j = 0; j < depth; ++j) add += w.overlap(idx[j], idx[depth]);
        partial[depth + 1] = partial[depth] + add;
        if (depth + 1 == L) {
            if (partial[L] < best) {
                best = partial[L];
                witness = idx;
            }
            ++idx[depth];
        } else {
            idx[depth + 1] = idx[depth] + 1;
            ++depth;
        }
    }
    if (witness.empty()) return std::nullopt;
    return MinPairSum{best, witness};
}

std::optional<MinPairSum> min_pairsum_below(const Family& family, int ell, long cutoff,
                                            const MinPairSumOptions& opts) {
    check_args(family, ell);
    const BigInt tuples = binomial(static_cast<long>(family.size()), ell);
    if (tuples <= opts.exhaustive_limit) return min_pairsum_exhaustive(family, ell, cutoff);
    return min_pairsum_bnb(family, ell, cutoff, opts.threads);
}

MinPairSum min_pairsum(const Family& family, int ell, const MinPairSumOptions& opts) {
    check_args(family, ell);
    const BigInt tuples = binomial(static_cast<long>(family.size()), ell);
    std::optional<MinPairSum> r = tuples <= opts.exhaustive_limit
                                      ? min_pairsum_exhaustive(family, ell, opts.cutoff)
                                      : min_pairsum_bnb(family, ell, opts.cutoff, opts.threads);
    if (!r) {
        if (opts.cutoff) throw ParameterError("no tuple below the cutoff; use min_pairsum_below");
        throw std::logic_error("min_pairsum: search produced no tuple");
    }
    return *r;
}

CheckResult check_condition(const Family& family, const ConditionSpec& spec, const CheckOptions& opts) {
    CheckResult out;
    out.threshold = threshold(spec);
    const int L = spec.tuple_size();
    if (family.size() < static_cast<std::size_t>(L)) return out;

    MinPairSumOptions mopts;
    mopts.threads = opts.threads;
    if (out.threshold > 0) {
        if (auto below = min_pairsum_below(family, L, out.threshold, mopts)) {
            out.ok = false;
            out.min_pairsum = below->value;
            out.violation = Violation{below->witness, below->value, out.threshold};
            return out;
        }
    }
    if (opts.exact_min) out.min_pairsum = min_pairsum(family, L, mopts).value;
    return out;
}

bool reverify(const Family& family, const Violation& v) {
    for (std::size_t i = 1; i < v.indices.size(); ++i)
        if (v.indices[i] <= v.indices[i - 1]) return false;
    if (!v.indices.empty() && v.indices.back() >= family.size()) return false;
    return pair_sum(family, v.indices) == v.pair_sum && v.pair_sum < v.threshold;
}

}  // namespace ekrf
