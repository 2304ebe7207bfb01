#include "ekrf/search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "bitset.hpp"

namespace ekrf {

using detail::Bitset;

namespace {

// Is there a q-subset of the indexed items whose node weights plus pairwise
// edge weights total less than `need`? Weights are nonnegative.
template <typename Edge>
bool light_subset_exists(std::size_t q, long need, const std::vector<long>& node_weight, Edge&& edge) {
    if (need <= 0) return false;
    if (q == 0) return true;
    const std::size_t m = node_weight.size();
    if (m < q) return false;
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return node_weight[a] < node_weight[b]; });
    std::vector<long> prefix(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + node_weight[order[i]];

    std::vector<std::size_t> picked;
    picked.reserve(q);
    auto dfs = [&](auto&& self, std::size_t start, long partial) -> bool {
        const std::size_t rem = q - picked.size();
        if (rem == 0) return partial < need;
        for (std::size_t p = start; p + rem <= m; ++p) {
            if (partial + prefix[p + rem] - prefix[p] >= need) return false;
            long add = node_weight[order[p]];
            for (std::size_t c : picked) add += edge(order[c], order[p]);
            if (partial + add >= need) continue;
            picked.push_back(p);
            if (self(self, p + 1, partial + add)) return true;
            picked.pop_back();
        }
        return false;
    };
    return dfs(dfs, 0, 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// SearchState

SearchState::SearchState(GroundParams params, const ConditionSpec& spec)
    : params_(params), tuple_size_(spec.tuple_size()), threshold_(ekrf::threshold(spec)) {}

bool SearchState::incremental_feasible(const KSet& candidate) const {
    if (candidate.ground() != params_.n || candidate.size() != params_.k)
        throw ParameterError("candidate " + candidate.to_string() + " is not a k-set over [n]");
    if (threshold_ <= 0) return true;
    const auto q = static_cast<std::size_t>(tuple_size_ - 1);
    if (members_.size() < q) return true;
    std::vector<long> w(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) w[i] = overlap(candidate, members_[i]);
    return !light_subset_exists(q, threshold_, w, [&](std::size_t a, std::size_t b) { return overlap_[a][b]; });
}

void SearchState::add(const KSet& member) {
    std::vector<int> row(members_.size() + 1);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        row[i] = overlap(member, members_[i]);
        overlap_[i].push_back(row[i]);
    }
    row.back() = member.size();
    members_.push_back(member);
    overlap_.push_back(std::move(row));
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

using Clock = std::chrono::steady_clock;

class Solver {
public:
    Solver(const GroundParams& params, const ConditionSpec& spec, const SearchOptions& opts)
        : params_(params), spec_(spec), opts_(opts), cands_(enumerate_ksets(params, opts.enumeration_cap)),
          tuple_size_(spec.tuple_size()), threshold_(threshold(spec)), start_(Clock::now()) {}

    const std::vector<KSet>& candidates() const { return cands_; }

    /// Searches for families of at least this size (ties with an incumbent
    /// are still explored so the least family wins).
    void seek_at_least(std::size_t size) { best_size_ = size == 0 ? 0 : size - 1; }

    void run() {
        std::vector<std::size_t> all(cands_.size());
        std::iota(all.begin(), all.end(), 0);
        expand(all, true);
    }

    void run_exhaustive() { exhaustive(0, SearchState(params_, spec_)); }

    const std::vector<std::size_t>& best() const { return best_; }
    bool aborted() const { return aborted_; }
    std::uint64_t nodes() const { return nodes_; }
    std::size_t open_bound() const { return open_bound_; }

private:
    int w(std::size_t a, std::size_t b) const { return overlap(cands_[a], cands_[b]); }

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    bool limits_hit() {
        if (aborted_) return true;
        if (opts_.node_cap && nodes_ >= opts_.node_cap) aborted_ = true;
        if (opts_.time_limit > 0 && (nodes_ & 63) == 0 && elapsed() >= opts_.time_limit) aborted_ = true;
        return aborted_;
    }

    void record() {
        if (chosen_.size() > best_size_) {
            best_size_ = chosen_.size();
            best_ = chosen_;
        }
    }

    // compat[i] holds the local indices j of p whose pairing with p[i] and
    // any tuple_size-2 chosen members stays at or above the threshold.
    std::vector<Bitset> compatibility(const std::vector<std::size_t>& p) const {
        const std::size_t s = p.size();
        std::vector<Bitset> compat(s, Bitset(s));
        const auto q = static_cast<std::size_t>(tuple_size_ - 2);
        if (chosen_.size() < q) {
            for (auto& b : compat) b.set_all();
            return compat;
        }
        std::vector<std::vector<long>> rows(s, std::vector<long>(chosen_.size()));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t u = 0; u < chosen_.size(); ++u) rows[i][u] = w(p[i], chosen_[u]);
        std::vector<long> node_weight(chosen_.size());
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = i + 1; j < s; ++j) {
                const long need = threshold_ - w(p[i], p[j]);
                bool ok;
                if (need <= 0) {
                    ok = true;
                } else if (q == 0) {
                    ok = false;
                } else if (q == 1) {
                    ok = true;
                    for (std::size_t u = 0; u < chosen_.size() && ok; ++u) ok = rows[i][u] + rows[j][u] >= need;
                } else {
                    for (std::size_t u = 0; u < chosen_.size(); ++u) node_weight[u] = rows[i][u] + rows[j][u];
                    ok = !light_subset_exists(q, need, node_weight, [&](std::size_t a, std::size_t b) {
                        return w(chosen_[a], chosen_[b]);
                    });
                }
                if (ok) {
                    compat[i].set(j);
                    compat[j].set(i);
                }
            }
        }
        return compat;
    }

    // p: candidates after the last chosen index that keep the chosen family
    // feasible on their own. Branches follow index order, so the first
    // family of a new best size is the lexicographically least one.
    void expand(const std::vector<std::size_t>& p, bool root) {
        ++nodes_;
        record();
        if (limits_hit()) {
            open_bound_ = std::max(open_bound_, chosen_.size() + p.size());
            return;
        }
        if (p.empty() || chosen_.size() + p.size() <= best_size_) return;

        const auto compat = compatibility(p);

        // Colour from the back: each class is pairwise incompatible, so the
        // colours used by p[i..] bound the members added from there on.
        std::vector<std::size_t> suffix_colours(p.size());
        if (chosen_.size() + 2 < static_cast<std::size_t>(tuple_size_)) {
            for (std::size_t i = 0; i < p.size(); ++i) suffix_colours[i] = p.size() - i;
        } else {
            std::vector<Bitset> classes;
            for (std::size_t i = p.size(); i-- > 0;) {
                std::size_t c = 0;
                while (c < classes.size() && compat[i].intersects(classes[c])) ++c;
                if (c == classes.size()) classes.emplace_back(p.size());
                classes[c].set(i);
                suffix_colours[i] = classes.size();
            }
        }

        // Under relabeling any nonempty family can be made to contain [k],
        // the least k-set, so the root only needs that branch.
        const std::size_t branches = root && opts_.symmetry == Symmetry::ElementOrder ? 1 : p.size();
        for (std::size_t i = 0; i < branches; ++i) {
            if (chosen_.size() + suffix_colours[i] <= best_size_) break;
            std::vector<std::size_t> next;
            for (std::size_t j = compat[i].next(i + 1); j < p.size(); j = compat[i].next(j + 1)) next.push_back(p[j]);
            chosen_.push_back(p[i]);
            expand(next, false);
            chosen_.pop_back();
            if (aborted_) {
                open_bound_ = std::max(open_bound_, chosen_.size() + suffix_colours[i]);
                return;
            }
        }
    }

    // Include/exclude over all candidates, include first.
    void exhaustive(std::size_t index, const SearchState& state) {
        ++nodes_;
        if (chosen_.size() + (cands_.size() - index) <= best_size_) return;
        if (index == cands_.size()) {
            record();
            return;
        }
        if (state.incremental_feasible(cands_[index])) {
            SearchState grown = state;
            grown.add(cands_[index]);
            chosen_.push_back(index);
            exhaustive(index + 1, grown);
            chosen_.pop_back();
        }
        exhaustive(index + 1, state);
    }

    GroundParams params_;
    ConditionSpec spec_;
    const SearchOptions& opts_;
    std::vector<KSet> cands_;
    int tuple_size_;
    long threshold_;
    Clock::time_point start_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_;
    std::size_t best_size_ = 0;
    std::size_t open_bound_ = 0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace

SearchResult max_family(const GroundParams& params, const ConditionSpec& spec, const SearchOptions& opts) {
    spec.validate();
    const long theta = threshold(spec);
    const auto start = Clock::now();
    auto seconds = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    if (opts.incumbent) {
        if (opts.incumbent->params() != params) throw ParameterError("incumbent is over different (n, k)");
        SearchState state(params, spec);
        for (const KSet& m : *opts.incumbent) {
            if (!state.incremental_feasible(m))
                throw ParameterError("infeasible incumbent: adding " + m.to_string() + " creates a violating tuple");
            state.add(m);
        }
    }
    if (opts.exhaustive && binomial(params.n, params.k) > opts.exhaustive_threshold)
        throw ParameterError("exhaustive mode needs C(n,k) <= " + std::to_string(opts.exhaustive_threshold));

    Solver solver(params, spec, opts);
    SearchResult out;

    if (theta <= 0) {
        out.best = Family(params, solver.candidates());
        out.size = out.best.size();
        out.optimal = true;
        out.bound = out.size;
        out.elapsed = seconds();
        return out;
    }

    const std::size_t inc_size = opts.incumbent ? opts.incumbent->size() : 0;
    solver.seek_at_least(inc_size);
    if (opts.exhaustive)
        solver.run_exhaustive();
    else
        solver.run();

    std::vector<KSet> found;
    for (std::size_t i : solver.best()) found.push_back(solver.candidates()[i]);
    Family best(params, std::move(found));
    if (opts.incumbent) {
        const Family& inc = *opts.incumbent;
        const bool take_incumbent =
            inc.size() > best.size() ||
            (inc.size() == best.size() && std::lexicographical_compare(inc.begin(), inc.end(), best.begin(), best.end()));
        if (take_incumbent || best.empty()) best = inc;
    }
    out.best = std::move(best);
    out.size = out.best.size();
    out.nodes = solver.nodes();
    out.optimal = !solver.aborted();
    out.bound = out.optimal ? out.size : std::max(out.size, solver.open_bound());
    out.elapsed = seconds();
    return out;
}

}  // namespace ekrf
