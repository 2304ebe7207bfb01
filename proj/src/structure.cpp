#include "ekrf/structure.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "bitset.hpp"

namespace ekrf {

using detail::Bitset;

std::optional<IndexPair> is_t_intersecting(const Family& family, int t) {
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (overlap(family[i], family[j]) < t) return IndexPair{i, j};
    return std::nullopt;
}

std::optional<IndexPair> is_cross_intersecting(const Family& a, const Family& b, int r) {
    if (a.params().n != b.params().n) throw ParameterError("cross-intersection over different ground sets");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (overlap(a[i], b[j]) < r) return IndexPair{i, j};
    return std::nullopt;
}

namespace {

// Maximum set of pairwise disjoint sets, all of one size, by branch and bound
// on the disjointness graph. Branches follow index order, so the first
// maximum reached is the lexicographically least one.
class DisjointSearch {
public:
    DisjointSearch(std::vector<KSet> sets, int set_size)
        : sets_(std::move(sets)), size_(set_size), disjoint_(sets_.size(), Bitset(sets_.size())) {
        for (std::size_t i = 0; i < sets_.size(); ++i)
            for (std::size_t j = i + 1; j < sets_.size(); ++j)
                if (sets_[i].disjoint_from(sets_[j])) {
                    disjoint_[i].set(j);
                    disjoint_[j].set(i);
                }
    }

    /// With a target, stops at the first (least) selection of that many sets.
    std::vector<std::size_t> solve(std::optional<int> target) {
        target_ = target;
        best_.clear();
        if (sets_.empty()) return best_;
        if (target) {
            best_size_ = *target - 1;
        } else {
            best_size_ = static_cast<int>(greedy()) - 1;
        }
        if (best_size_ < 0) best_size_ = 0;
        Bitset all(sets_.size());
        all.set_all();
        chosen_.clear();
        done_ = false;
        expand(all);
        return best_;
    }

private:
    std::size_t greedy() const {
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < sets_.size(); ++i) {
            bool ok = true;
            for (std::size_t p : picked) ok = ok && disjoint_[p].test(i);
            if (ok) picked.push_back(i);
        }
        return picked.size();
    }

    // Elements that can still be covered, divided by the set size.
    int element_bound(const Bitset& cand) const {
        KSet u(sets_.front().ground(), 0, 0);
        cand.for_each([&](std::size_t v) { u = u | sets_[v]; });
        return u.size() / size_;
    }

    // Greedy hitting set: disjoint sets need distinct hitting elements.
    int transversal_bound(const Bitset& cand) const {
        std::vector<std::size_t> left;
        cand.for_each([&](std::size_t v) { left.push_back(v); });
        int picks = 0;
        std::array<int, kMaxGroundSize> freq{};
        while (!left.empty()) {
            freq.fill(0);
            for (std::size_t v : left)
                for (int e : sets_[v].elements()) ++freq[static_cast<std::size_t>(e - 1)];
            const auto top = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin()) + 1;
            std::erase_if(left, [&](std::size_t v) { return sets_[v].contains(top); });
            ++picks;
        }
        return picks;
    }

    void expand(const Bitset& cand) {
        const int depth = static_cast<int>(chosen_.size());
        if (cand.none()) {
            record();
            return;
        }
        const int ub = depth + std::min(element_bound(cand), transversal_bound(cand));
        if (ub <= best_size_) {
            record();
            return;
        }

        // Greedy colouring from the highest index down: colour classes are
        // pairwise intersecting, so the colours used by cand[i..] bound any
        // extension that starts at cand[i].
        std::vector<std::size_t> order;
        cand.for_each([&](std::size_t v) { order.push_back(v); });
        std::vector<int> suffix_colours(order.size());
        std::vector<Bitset> classes;
        for (std::size_t i = order.size(); i-- > 0;) {
            const std::size_t v = order[i];
            std::size_t c = 0;
            while (c < classes.size() && disjoint_[v].intersects(classes[c])) ++c;
            if (c == classes.size()) classes.emplace_back(sets_.size());
            classes[c].set(v);
            suffix_colours[i] = static_cast<int>(classes.size());
        }

        for (std::size_t i = 0; i < order.size(); ++i) {
            if (done_ || depth + suffix_colours[i] <= best_size_) break;
            const std::size_t v = order[i];
            Bitset next = cand;
            next &= disjoint_[v];
            next.clear_through(v);
            chosen_.push_back(v);
            if (target_ && static_cast<int>(chosen_.size()) >= *target_) {
                record();
                done_ = true;
            } else {
                expand(next);
            }
            chosen_.pop_back();
        }
        record();
    }

    void record() {
        if (static_cast<int>(chosen_.size()) > best_size_) {
            best_size_ = static_cast<int>(chosen_.size());
            best_ = chosen_;
        }
    }

    std::vector<KSet> sets_;
    int size_;
    std::vector<Bitset> disjoint_;
    std::optional<int> target_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_;
    int best_size_ = 0;
    bool done_ = false;
};

}  // namespace

Matching matching_number(const Family& family) {
    if (family.empty()) throw ParameterError("matching_number needs a nonempty family");
    DisjointSearch search(family.members(), family.params().k);
    Matching out;
    out.witness = search.solve(std::nullopt);
    out.nu = static_cast<int>(out.witness.size());
    return out;
}

namespace {

void for_each_subset(const std::vector<int>& elems, int t, int n, const auto& f) {
    const int k = static_cast<int>(elems.size());
    if (t > k) return;
    std::vector<int> idx(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<int> pick;
        for (int i : idx) pick.push_back(elems[static_cast<std::size_t>(i)]);
        f(KSet(n, pick));
        int i = t - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - t + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < t; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

bool is_sunflower(const Family& family, const Sunflower& s) {
    if (static_cast<int>(s.member_indices.size()) != s.petal_count) return false;
    for (std::size_t i = 0; i < s.member_indices.size(); ++i) {
        if (s.member_indices[i] >= family.size()) return false;
        const KSet& a = family[s.member_indices[i]];
        if (!s.kernel.is_subset_of(a)) return false;
        for (std::size_t j = i + 1; j < s.member_indices.size(); ++j)
            if ((a & family[s.member_indices[j]]) != s.kernel) return false;
    }
    return true;
}

std::optional<Sunflower> find_sunflower(const Family& family, int t, int u) {
    const int k = family.params().k;
    const int n = family.params().n;
    if (t < 0 || t >= k) throw ParameterError("find_sunflower requires 0 <= t < k");
    if (u < 1 || family.size() < static_cast<std::size_t>(u)) return std::nullopt;

    std::map<KSet, std::vector<std::size_t>> holders;
    for (std::size_t i = 0; i < family.size(); ++i)
        for_each_subset(family[i].elements(), t, n, [&](const KSet& kern) { holders[kern].push_back(i); });

    for (const auto& [kernel, members] : holders) {
        if (members.size() < static_cast<std::size_t>(u)) continue;
        std::vector<KSet> residuals;
        KSet spread(n, 0, 0);
        for (std::size_t i : members) {
            residuals.push_back(family[i] - kernel);
            spread = spread | residuals.back();
        }
        if (spread.size() < u * (k - t)) continue;
        DisjointSearch search(std::move(residuals), k - t);
        const auto picked = search.solve(u);
        if (static_cast<int>(picked.size()) < u) continue;
        Sunflower s{kernel, {}, u};
        for (std::size_t p : picked) s.member_indices.push_back(members[p]);
        std::sort(s.member_indices.begin(), s.member_indices.end());
        if (!is_sunflower(family, s)) throw std::logic_error("find_sunflower produced an invalid sunflower");
        return s;
    }
    return std::nullopt;
}

Decomposition kernel_decompose(const Family& family, const KSet& kernel) {
    const int t = kernel.size();
    if (t < 1) throw ParameterError("kernel must be nonempty");
    if (kernel.ground() != family.params().n) throw ParameterError("kernel over a different ground set");
    Decomposition d;
    d.kernel = kernel;
    std::vector<KSet> in_t, rest;
    std::map<int, std::vector<KSet>> minus;
    for (int a : kernel.elements()) {
        minus[a];
        d.idx_minus[a];
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        const KSet& f = family[i];
        const KSet common = f & kernel;
        if (common.size() == t) {
            in_t.push_back(f);
            d.idx_t.push_back(i);
        } else if (common.size() == t - 1) {
            const int a = (kernel - common).min_element();
            minus[a].push_back(f);
            d.idx_minus[a].push_back(i);
        } else {
            rest.push_back(f);
            d.idx_leftover.push_back(i);
        }
    }
    d.f_t = Family(family.params(), std::move(in_t));
    for (auto& [a, sets] : minus) d.f_minus.emplace(a, Family(family.params(), std::move(sets)));
    d.leftover = Family(family.params(), std::move(rest));
    return d;
}

AuditReport lemma_audit(const Family& family, int t, int ell, const AuditOptions& opts) {
    AuditReport rep;
    KSet kernel;
    if (opts.kernel) {
        kernel = *opts.kernel;
        if (kernel.size() != t) throw ParameterError("audit kernel must have exactly t elements");
    } else {
        const int u = 2 * family.params().k + ell - 2;
        rep.sunflower = find_sunflower(family, t, u);
        if (!rep.sunflower) return rep;
        kernel = rep.sunflower->kernel;
    }
    rep.case1 = true;
    rep.decomposition = kernel_decompose(family, kernel);
    const Decomposition& d = *rep.decomposition;

    if (!d.idx_leftover.empty()) {
        rep.kernel_meeting.pass = false;
        rep.kernel_meeting.witness = {d.idx_leftover.front()};
        rep.kernel_meeting.detail = "member " + family[d.idx_leftover.front()].to_string() + " meets the kernel in " +
                                    std::to_string(overlap(family[d.idx_leftover.front()], kernel)) + " < t-1 elements";
    }

    const int inner = t + ell - 3;
    for (const auto& [a, fam] : d.f_minus) {
        if (auto bad = is_t_intersecting(fam, inner)) {
            const auto& idx = d.idx_minus.at(a);
            rep.residual_intersecting.pass = false;
            rep.residual_intersecting.witness = {idx[bad->first], idx[bad->second]};
            rep.residual_intersecting.detail = "F(T-{" + std::to_string(a) + "}) is not " + std::to_string(inner) +
                                               "-intersecting";
            break;
        }
    }

    for (auto ia = d.f_minus.begin(); ia != d.f_minus.end() && rep.residual_cross.pass; ++ia) {
        for (auto ib = std::next(ia); ib != d.f_minus.end() && rep.residual_cross.pass; ++ib) {
            const auto& fa = ia->second;
            const auto& fb = ib->second;
            for (std::size_t i = 0; i < fa.size() && rep.residual_cross.pass; ++i)
                for (std::size_t j = 0; j < fb.size(); ++j) {
                    if (overlap(fa[i] - kernel, fb[j] - kernel) < ell - 1) {
                        rep.residual_cross.pass = false;
                        rep.residual_cross.witness = {d.idx_minus.at(ia->first)[i], d.idx_minus.at(ib->first)[j]};
                        rep.residual_cross.detail = "residuals for a=" + std::to_string(ia->first) + " and b=" +
                                                    std::to_string(ib->first) + " are not " +
                                                    std::to_string(ell - 1) + "-cross-intersecting";
                        break;
                    }
                }
        }
    }

    if (opts.strict && !rep.all_pass())
        throw std::logic_error("lemma audit failed: " + rep.kernel_meeting.detail + rep.residual_intersecting.detail +
                               rep.residual_cross.detail);
    return rep;
}

}  // namespace ekrf
