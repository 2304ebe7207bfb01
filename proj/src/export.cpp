#include <sstream>

#include "ekrf/search.hpp"

namespace ekrf {

namespace {

constexpr std::uint64_t kCountLimit = 1'000'000'000;

}  // namespace

std::vector<std::vector<std::size_t>> bad_tuples(const std::vector<KSet>& candidates, const ConditionSpec& spec,
                                                 std::uint64_t tuple_cap) {
    const long theta = threshold(spec);
    const auto L = static_cast<std::size_t>(spec.tuple_size());
    std::vector<std::vector<std::size_t>> out;
    if (theta <= 0 || candidates.size() < L) return out;

    std::uint64_t count = 0;
    bool truncated = false;
    std::vector<std::size_t> tuple;
    tuple.reserve(L);
    // Pair-sums only grow as members are added, so prefixes at or above the
    // threshold are cut.
    auto dfs = [&](auto&& self, std::size_t start, long partial) -> void {
        if (truncated) return;
        if (tuple.size() == L) {
            if (++count <= tuple_cap) out.push_back(tuple);
            if (count >= kCountLimit) truncated = true;
            return;
        }
        for (std::size_t v = start; v + (L - tuple.size()) <= candidates.size(); ++v) {
            long add = 0;
            for (std::size_t u : tuple) add += overlap(candidates[u], candidates[v]);
            if (partial + add >= theta) continue;
            tuple.push_back(v);
            self(self, v + 1, partial + add);
            tuple.pop_back();
            if (truncated) return;
        }
    };
    dfs(dfs, 0, 0);
    if (count > tuple_cap)
        throw CapExceeded(std::string(truncated ? "at least " : "") + std::to_string(count) +
                              " violating tuples exceed the export cap " + std::to_string(tuple_cap),
                          BigInt(count));
    return out;
}

namespace {

std::string describe(const GroundParams& params, const ConditionSpec& spec) {
    std::ostringstream s;
    s << "n=" << params.n << " k=" << params.k << " variant=" << to_string(spec.variant) << " t=" << spec.t
      << " ell=" << spec.tuple_size() << " threshold=" << threshold(spec);
    if (spec.variant == Variant::Eq10) s << " s=" << spec.slack;
    return s.str();
}

}  // namespace

std::string export_ilp(const GroundParams& params, const ConditionSpec& spec, const ExportOptions& opts) {
    spec.validate();
    const auto cands = enumerate_ksets(params, opts.enumeration_cap);
    const auto tuples = bad_tuples(cands, spec, opts.tuple_cap);
    std::ostringstream out;
    out << "\\ maximum family: " << describe(params, spec) << "\n";
    out << "\\ " << cands.size() << " variables, " << tuples.size() << " tuple constraints\n";
    for (std::size_t i = 0; i < cands.size(); ++i) out << "\\ x" << i + 1 << " = " << cands[i].to_string() << "\n";
    out << "Maximize\n obj:";
    for (std::size_t i = 0; i < cands.size(); ++i) out << (i ? " + x" : " x") << i + 1;
    out << "\nSubject To\n";
    for (std::size_t c = 0; c < tuples.size(); ++c) {
        out << " c" << c + 1 << ":";
        for (std::size_t j = 0; j < tuples[c].size(); ++j) out << (j ? " + x" : " x") << tuples[c][j] + 1;
        out << " <= " << tuples[c].size() - 1 << "\n";
    }
    out << "Binary\n";
    for (std::size_t i = 0; i < cands.size(); ++i) out << " x" << i + 1 << "\n";
    out << "End\n";
    return out.str();
}

namespace {

// Totalizer over a range of input literals. Each node's outputs o_1..o_m
// (m capped at the target) mean "at least j inputs below are true".
class Totalizer {
public:
    Totalizer(int next_var, int cap) : next_(next_var), cap_(cap) {}

    std::vector<int> build(const std::vector<int>& inputs, std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return {inputs[lo]};
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto a = build(inputs, lo, mid);
        const auto b = build(inputs, mid, hi);
        const int width = std::min<int>(static_cast<int>(hi - lo), cap_);
        std::vector<int> r(static_cast<std::size_t>(width));
        for (auto& v : r) v = next_++;
        const int p = static_cast<int>(a.size());
        const int q = static_cast<int>(b.size());
        auto lit = [](const std::vector<int>& v, int j) { return v[static_cast<std::size_t>(j - 1)]; };
        for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= q; ++j) {
                // a >= i and b >= j imply r >= i + j.
                if (i + j >= 1) {
                    std::vector<int> c;
                    if (i) c.push_back(-lit(a, i));
                    if (j) c.push_back(-lit(b, j));
                    c.push_back(lit(r, std::min(i + j, width)));
                    clauses.push_back(std::move(c));
                }
                // r >= i + j + 1 implies a >= i + 1 or b >= j + 1.
                if (i + j + 1 <= width) {
                    std::vector<int> c{-lit(r, i + j + 1)};
                    if (i + 1 <= p) c.push_back(lit(a, i + 1));
                    if (j + 1 <= q) c.push_back(lit(b, j + 1));
                    clauses.push_back(std::move(c));
                }
            }
        return r;
    }

    int next_var() const { return next_; }

    std::vector<std::vector<int>> clauses;

private:
    int next_;
    int cap_;
};

}  // namespace

std::string export_cnf(const GroundParams& params, const ConditionSpec& spec, long target_size,
                       const ExportOptions& opts) {
    spec.validate();
    const auto cands = enumerate_ksets(params, opts.enumeration_cap);
    const auto tuples = bad_tuples(cands, spec, opts.tuple_cap);
    std::vector<std::vector<int>> clauses;
    for (const auto& t : tuples) {
        std::vector<int> c;
        for (std::size_t v : t) c.push_back(-static_cast<int>(v + 1));
        clauses.push_back(std::move(c));
    }
    const int inputs = static_cast<int>(cands.size());
    int vars = inputs;
    if (target_size > inputs) {
        clauses.emplace_back();
    } else if (target_size > 0) {
        std::vector<int> lits(cands.size());
        for (int i = 0; i < inputs; ++i) lits[static_cast<std::size_t>(i)] = i + 1;
        Totalizer tot(inputs + 1, static_cast<int>(target_size));
        const auto outputs = tot.build(lits, 0, lits.size());
        vars = tot.next_var() - 1;
        for (auto& c : tot.clauses) clauses.push_back(std::move(c));
        clauses.push_back({outputs[static_cast<std::size_t>(target_size - 1)]});
    }

    std::ostringstream out;
    out << "c family of size >= " << target_size << ": " << describe(params, spec) << "\n";
    out << "c " << tuples.size() << " blocking clauses, totalizer auxiliaries " << inputs + 1 << ".." << vars << "\n";
    for (std::size_t i = 0; i < cands.size(); ++i) out << "c x" << i + 1 << " = " << cands[i].to_string() << "\n";
    out << "p cnf " << vars << " " << clauses.size() << "\n";
    for (const auto& c : clauses) {
        for (int l : c) out << l << " ";
        out << "0\n";
    }
    return out.str();
}

}  // namespace ekrf
