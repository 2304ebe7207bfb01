#include <doctest.h>

#include <set>
#include <sstream>

#include "ekrf/conditions.hpp"
#include "ekrf/constructions.hpp"
#include "ekrf/search.hpp"
#include "oracles.hpp"

using namespace ekrf;

namespace {

void require_certificate(const SearchResult& r, const ConditionSpec& spec) {
    REQUIRE(check_condition(r.best, spec).ok);
    REQUIRE(r.size == r.best.size());
    REQUIRE(r.size <= r.bound);
    if (r.optimal) REQUIRE(r.size == r.bound);
}

// Variable index -> k-set, read back from the export's comment header.
std::vector<std::vector<int>> mapping(const std::string& text, char comment) {
    std::vector<std::vector<int>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != comment) continue;
        const auto eq = line.find(" = {");
        if (eq == std::string::npos) continue;
        std::vector<int> s;
        std::istringstream el(line.substr(eq + 4));
        std::string f;
        while (std::getline(el, f, ',')) s.push_back(std::stoi(f));
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("pairwise intersecting instance n=6 k=3") {
    const ConditionSpec spec{1, 2, Variant::PairwiseT, 0};
    const SearchResult r = max_family({6, 3}, spec);
    CHECK(r.size == 10);
    CHECK(r.optimal);
    CHECK(r.bound == 10);
    require_certificate(r, spec);
    CHECK(r.best == construct_star(6, 3, 1));
}

TEST_CASE("construction incumbent at n=7, k=3") {
    const ConditionSpec spec{1, 3, Variant::Eq4, 0};
    SearchOptions opts;
    opts.incumbent = construct_thm6(7, 3, 1, 3);
    REQUIRE(opts.incumbent->size() == 25);
    const SearchResult r = max_family({7, 3}, spec, opts);
    CHECK(r.size >= 25);
    CHECK(r.optimal);
    CHECK(r.size == 35);
    require_certificate(r, spec);
}

TEST_CASE("vacuous threshold takes every set") {
    const ConditionSpec spec{1, 3, Variant::Eq10, 1};
    const SearchResult r = max_family({6, 3}, spec);
    CHECK(r.size == 20);
    CHECK(r.optimal);
}

TEST_CASE("incremental feasibility") {
    const ConditionSpec spec{1, 3, Variant::Eq4, 0};
    SearchState empty({9, 3}, spec);
    CHECK(empty.incremental_feasible(KSet(9, {1, 2, 3})));

    SearchState st({9, 3}, spec);
    st.add(KSet(9, {1, 2, 3}));
    st.add(KSet(9, {4, 5, 6}));
    CHECK_FALSE(st.incremental_feasible(KSet(9, {7, 8, 9})));
    CHECK(st.incremental_feasible(KSet(9, {1, 7, 8})));
    CHECK_THROWS_AS(st.incremental_feasible(KSet(9, {1, 2})), ParameterError);

    const Family c = construct_thm6(9, 3, 1, 3);
    SearchState prefix({9, 3}, spec);
    for (const auto& s : c) {
        REQUIRE(prefix.incremental_feasible(s));
        prefix.add(s);
    }
}

TEST_CASE("infeasible incumbent is rejected") {
    const ConditionSpec spec{1, 3, Variant::Eq4, 0};
    SearchOptions opts;
    opts.incumbent = Family(GroundParams(9, 3), {KSet(9, {1, 2, 3}), KSet(9, {4, 5, 6}), KSet(9, {7, 8, 9})});
    CHECK_THROWS_AS(max_family({9, 3}, spec, opts), ParameterError);
}

TEST_CASE("exhaustive mode limits") {
    const ConditionSpec spec{1, 2, Variant::PairwiseT, 0};
    SearchOptions opts;
    opts.exhaustive = true;
    const SearchResult r = max_family({6, 3}, spec, opts);
    CHECK(r.size == 10);
    CHECK(r.optimal);
    CHECK_THROWS_AS(max_family({7, 3}, spec, opts), ParameterError);
}

TEST_CASE("enumeration cap") {
    SearchOptions opts;
    opts.enumeration_cap = 100;
    CHECK_THROWS_AS(max_family({10, 4}, {1, 2, Variant::PairwiseT, 0}, opts), CapExceeded);
}

TEST_CASE("limits produce an unproven certificate") {
    const ConditionSpec spec{1, 3, Variant::Eq4, 0};
    SearchOptions opts;
    opts.incumbent = construct_thm6(10, 3, 1, 3);
    opts.node_cap = 200;
    const SearchResult r = max_family({10, 3}, spec, opts);
    CHECK_FALSE(r.optimal);
    CHECK(r.size >= opts.incumbent->size());
    CHECK(r.bound > r.size);
    require_certificate(r, spec);
}

TEST_CASE("symmetry option keeps the optimum") {
    for (auto [n, k, t, l] : std::vector<std::array<int, 4>>{{6, 3, 1, 3}, {7, 3, 2, 3}, {6, 2, 1, 3}, {7, 4, 2, 3}}) {
        const ConditionSpec spec{t, l, Variant::Eq4, 0};
        SearchOptions plain_opts;
        SearchOptions sym_opts;
        sym_opts.symmetry = Symmetry::ElementOrder;
        const auto a = max_family({n, k}, spec, plain_opts);
        const auto b = max_family({n, k}, spec, sym_opts);
        REQUIRE(a.optimal);
        REQUIRE(b.optimal);
        CHECK(a.size == b.size);
        require_certificate(b, spec);
    }
}

TEST_CASE("solver equals brute force when C(n,k) <= 20") {
    struct Case {
        int n, k;
        ConditionSpec spec;
    };
    std::vector<Case> cases;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 1}, {5, 2}, {6, 5}, {6, 3}, {5, 3}, {4, 2}, {6, 2}}) {
        if (binomial(n, k) > 20) continue;
        cases.push_back({n, k, {1, 2, Variant::PairwiseT, 0}});
        cases.push_back({n, k, {2, 2, Variant::PairwiseT, 0}});
        cases.push_back({n, k, {1, 3, Variant::Eq4, 0}});
        cases.push_back({n, k, {1, 3, Variant::Eq3, 0}});
        cases.push_back({n, k, {2, 3, Variant::Eq4, 0}});
        cases.push_back({n, k, {1, 4, Variant::Eq4, 0}});
        cases.push_back({n, k, {1, 5, Variant::Eq10, 1}});
    }
    for (const auto& c : cases) {
        CAPTURE(c.n);
        CAPTURE(c.k);
        CAPTURE(to_string(c.spec.variant));
        const auto r = max_family({c.n, c.k}, c.spec);
        const std::size_t ref = oracle::max_family(c.n, c.k, c.spec.tuple_size(), threshold(c.spec));
        REQUIRE(r.optimal);
        REQUIRE(r.size == ref);
        require_certificate(r, c.spec);
    }
}

TEST_CASE("raising the threshold never raises the optimum") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {6, 3}, {7, 3}, {7, 2}})
        for (int t = 1; t <= 2; ++t) {
            const auto eq4 = max_family({n, k}, {t, 3, Variant::Eq4, 0});
            const auto eq3 = max_family({n, k}, {t, 3, Variant::Eq3, 0});
            REQUIRE(eq4.optimal);
            REQUIRE(eq3.optimal);
            CHECK(eq3.size <= eq4.size);
        }
}

TEST_CASE("ties resolve to the lexicographically least family") {
    const ConditionSpec spec{1, 2, Variant::PairwiseT, 0};
    SearchOptions opts;
    std::vector<KSet> other;
    for (const auto& s : enumerate_ksets({6, 3}))
        if (s.contains(6)) other.push_back(s);
    opts.incumbent = Family(GroundParams(6, 3), other);
    const auto r = max_family({6, 3}, spec, opts);
    CHECK(r.best == construct_star(6, 3, 1));
}

}

TEST_SUITE("export") {

TEST_CASE("ilp for pairwise n=5 k=2") {
    const std::string lp = export_ilp({5, 2}, {1, 2, Variant::PairwiseT, 0});
    const auto map = mapping(lp, '\\');
    REQUIRE(map.size() == 10);
    CHECK(map[0] == std::vector<int>{1, 2});
    CHECK(map[9] == std::vector<int>{4, 5});
    std::size_t constraints = 0;
    std::set<std::pair<int, int>> pairs;
    std::istringstream in(lp);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(" c", 0) != 0 && line.rfind("c", 0) != 0) continue;
        if (line.find(':') == std::string::npos) continue;
        ++constraints;
        int a = 0, b = 0;
        const auto p1 = line.find('x');
        const auto p2 = line.find('x', p1 + 1);
        a = std::stoi(line.substr(p1 + 1));
        b = std::stoi(line.substr(p2 + 1));
        CHECK(line.find("<= 1") != std::string::npos);
        pairs.insert({a, b});
    }
    std::size_t disjoint = 0;
    for (std::size_t i = 0; i < map.size(); ++i)
        for (std::size_t j = i + 1; j < map.size(); ++j)
            if (oracle::disjoint(map[i], map[j])) {
                ++disjoint;
                CHECK(pairs.count({static_cast<int>(i + 1), static_cast<int>(j + 1)}) == 1);
            }
    CHECK(disjoint == 15);
    CHECK(constraints == 15);
    CHECK(lp.find("Binary") != std::string::npos);
    CHECK(lp.find("Maximize") != std::string::npos);
}

TEST_CASE("ilp with vacuous threshold has no constraints") {
    const std::string lp = export_ilp({5, 2}, {1, 3, Variant::Eq10, 1});
    CHECK(lp.find("<=") == std::string::npos);
    CHECK(mapping(lp, '\\').size() == 10);
}

TEST_CASE("bad tuple cap reports the count") {
    const auto cands = enumerate_ksets({9, 3});
    CHECK(bad_tuples(cands, {1, 3, Variant::Eq4, 0}, 1000).size() == 280);
    try {
        bad_tuples(cands, {1, 3, Variant::Eq4, 0}, 10);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(e.required() == 280);
    }
    ExportOptions eo;
    eo.tuple_cap = 10;
    CHECK_THROWS_AS(export_ilp({9, 3}, {1, 3, Variant::Eq4, 0}, eo), CapExceeded);
}

TEST_CASE("cnf satisfiability matches the solver optimum") {
    struct Case {
        int n, k;
        ConditionSpec spec;
    };
    for (const auto& c : std::vector<Case>{{6, 3, {1, 2, Variant::PairwiseT, 0}},
                                           {6, 2, {1, 3, Variant::Eq4, 0}},
                                           {5, 2, {1, 2, Variant::PairwiseT, 0}},
                                           {6, 2, {2, 3, Variant::Eq3, 0}}}) {
        const auto r = max_family({c.n, c.k}, c.spec);
        REQUIRE(r.optimal);
        const long opt = static_cast<long>(r.size);
        CHECK(oracle::dpll(oracle::parse_dimacs(export_cnf({c.n, c.k}, c.spec, opt))));
        CHECK_FALSE(oracle::dpll(oracle::parse_dimacs(export_cnf({c.n, c.k}, c.spec, opt + 1))));
    }
}

TEST_CASE("cnf at target 17 for n=6, k=3, l=3") {
    const ConditionSpec spec{1, 3, Variant::Eq4, 0};
    const auto r = max_family({6, 3}, spec);
    const std::string cnf = export_cnf({6, 3}, spec, 17);
    CHECK(oracle::dpll(oracle::parse_dimacs(cnf)) == (r.size >= 17));
    CHECK(mapping(cnf, 'c').size() == 20);
    CHECK_FALSE(oracle::dpll(oracle::parse_dimacs(export_cnf({6, 3}, spec, 21))));
    CHECK(oracle::dpll(oracle::parse_dimacs(export_cnf({6, 3}, spec, 0))));
}

}
