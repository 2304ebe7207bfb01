#include <doctest.h>

#include <random>

#include "ekrf/conditions.hpp"
#include "ekrf/constructions.hpp"
#include "oracles.hpp"

using namespace ekrf;

namespace {

Family fam(int n, std::initializer_list<std::initializer_list<int>> sets) {
    std::vector<KSet> v;
    int k = 0;
    for (auto s : sets) {
        v.emplace_back(n, s);
        k = static_cast<int>(s.size());
    }
    return Family(GroundParams(n, k), v);
}

std::vector<oracle::Set> plain(const Family& f) {
    std::vector<oracle::Set> out;
    for (const auto& s : f) out.push_back(s.elements());
    return out;
}

}  // namespace

TEST_SUITE("conditions") {

TEST_CASE("threshold frozen values") {
    CHECK(threshold({1, 3, Variant::Eq4, 0}) == 1);
    CHECK(threshold({2, 4, Variant::Eq3, 0}) == 10);
    CHECK(threshold({1, 5, Variant::Eq10, 2}) == 4);
    CHECK(threshold({3, 2, Variant::PairwiseT, 0}) == 3);
    CHECK(threshold({1, 3, Variant::Eq10, 1}) == 0);
    CHECK(threshold({1, 4, Variant::Eq2, 0}) == 4);
}

TEST_CASE("threshold hypotheses are enforced") {
    CHECK_THROWS_AS(threshold({2, 3, Variant::Eq2, 0}), ParameterError);
    CHECK_THROWS_AS(threshold({1, 2, Variant::Eq4, 0}), ParameterError);
    CHECK_THROWS_AS(threshold({2, 5, Variant::Eq10, 1}), ParameterError);
    CHECK_THROWS_AS(threshold({1, 4, Variant::Eq10, 2}), ParameterError);
    CHECK_THROWS_AS(threshold({0, 3, Variant::Eq3, 0}), ParameterError);
    CHECK_THROWS_AS(threshold({1, 3, Variant::Eq3, -1}), ParameterError);
    CHECK_THROWS_AS(parse_variant("eq5"), ParameterError);
    CHECK(parse_variant(to_string(Variant::Eq10)) == Variant::Eq10);
}

TEST_CASE("threshold identities across variants") {
    for (int l = 3; l <= 20; ++l)
        for (int t = 1; t <= 8; ++t) {
            REQUIRE(threshold({t, l, Variant::Eq3, 0}) == threshold({t, l, Variant::Eq4, 0}) + 1);
            if (t == 1) REQUIRE(threshold({1, l, Variant::Eq2, 0}) == threshold({1, l, Variant::Eq3, 0}));
        }
}

TEST_CASE("pair sum frozen values") {
    const Family a = fam(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}});
    const std::vector<std::size_t> all{0, 1, 2};
    CHECK(pair_sum(a, all) == 6);
    const Family b = fam(6, {{1, 2, 3}, {4, 5, 6}});
    const std::vector<std::size_t> two{0, 1};
    CHECK(pair_sum(b, two) == 0);
    const Family c = fam(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}});
    CHECK(pair_sum(c, all) == 3);
    const std::vector<std::size_t> dup{0, 0};
    const std::vector<std::size_t> out{0, 5};
    CHECK_THROWS_AS(pair_sum(c, dup), ParameterError);
    CHECK_THROWS_AS(pair_sum(c, out), ParameterError);
}

TEST_CASE("min pair sum frozen values") {
    const Family c = fam(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}});
    const auto r = min_pairsum(c, 3);
    CHECK(r.value == 3);
    CHECK(r.witness == std::vector<std::size_t>{0, 1, 2});

    const Family d = fam(12, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10, 11, 12}});
    const auto z = min_pairsum(d, 3);
    CHECK(z.value == 0);
    CHECK(z.witness == std::vector<std::size_t>{0, 1, 2});

    const Family g = construct_thm6(8, 3, 1, 3);
    REQUIRE(g.size() == 36);
    const auto m = min_pairsum(g, 3);
    CHECK(m.value == 1);
    CHECK(pair_sum(g, m.witness) == 1);
    const auto ref = oracle::min_pairsum(plain(g), 3);
    CHECK(m.witness == ref.witness);

    CHECK_THROWS_AS(min_pairsum(c, 4), ParameterError);
    CHECK_THROWS_AS(min_pairsum(c, 1), ParameterError);
}

TEST_CASE("branch and bound agrees with exhaustive on the construction") {
    const Family g = construct_thm6(8, 3, 1, 3);
    const auto bb = min_pairsum_bnb(g, 3, std::nullopt);
    const auto ex = min_pairsum_exhaustive(g, 3, std::nullopt);
    REQUIRE(bb);
    REQUIRE(ex);
    CHECK(bb->value == ex->value);
    CHECK(bb->witness == ex->witness);
    CHECK_FALSE(min_pairsum_bnb(g, 3, 1));
    CHECK_FALSE(min_pairsum_exhaustive(g, 3, 1));
    CHECK_FALSE(min_pairsum_below(g, 3, 1).has_value());
}

TEST_CASE("branch and bound witness is deterministic across thread counts") {
    const Family g = construct_thm6(10, 3, 1, 3);
    const auto one = min_pairsum_bnb(g, 3, std::nullopt, 1);
    const auto four = min_pairsum_bnb(g, 3, std::nullopt, 4);
    REQUIRE(one);
    REQUIRE(four);
    CHECK(one->value == four->value);
    CHECK(one->witness == four->witness);
    const auto ex = min_pairsum_exhaustive(g, 3, std::nullopt);
    CHECK(one->witness == ex->witness);
}

TEST_CASE("check condition frozen examples") {
    const Family star = construct_star(7, 3, 1);
    CHECK(check_condition(star, {1, 3, Variant::Eq3, 0}).ok);

    const Family c = fam(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}});
    const auto r = check_condition(c, {2, 3, Variant::Eq4, 0});
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violation);
    CHECK(r.violation->pair_sum == 3);
    CHECK(r.violation->threshold == 4);
    CHECK(reverify(c, *r.violation));

    const Family g = construct_thm6(8, 3, 1, 3);
    const auto ok = check_condition(g, {1, 3, Variant::Eq4, 0}, {true, 1});
    CHECK(ok.ok);
    REQUIRE(ok.min_pairsum);
    CHECK(*ok.min_pairsum == 1);
    CHECK(ok.threshold == 1);
}

TEST_CASE("check condition edge cases") {
    const Family two = fam(6, {{1, 2, 3}, {4, 5, 6}});
    CHECK(check_condition(two, {1, 3, Variant::Eq4, 0}).ok);
    const auto pw = check_condition(two, {1, 2, Variant::PairwiseT, 0});
    REQUIRE_FALSE(pw.ok);
    CHECK(pw.violation->indices == std::vector<std::size_t>{0, 1});

    const Family d = fam(9, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    const auto vac = check_condition(d, {1, 3, Variant::Eq10, 1});
    CHECK(vac.threshold == 0);
    CHECK(vac.ok);

    const Family empty(GroundParams(5, 2));
    CHECK(check_condition(empty, {1, 3, Variant::Eq4, 0}).ok);
}

TEST_CASE("reverify rejects tampered violations") {
    const Family c = fam(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}});
    Violation v{{0, 1, 2}, 3, 4};
    CHECK(reverify(c, v));
    v.pair_sum = 2;
    CHECK_FALSE(reverify(c, v));
    CHECK_FALSE(reverify(c, Violation{{0, 1, 2}, 3, 3}));
    CHECK_FALSE(reverify(c, Violation{{1, 0, 2}, 3, 4}));
}

TEST_CASE("branch and bound matches the oracle on random families") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 5);
        const int k = 2 + static_cast<int>(rng() % 3);
        auto all = enumerate_ksets({n, k});
        std::vector<KSet> pick;
        const std::size_t m = 5 + rng() % 11;
        while (pick.size() < std::min(m, all.size())) {
            const std::size_t i = rng() % all.size();
            pick.push_back(all[i]);
            all.erase(all.begin() + static_cast<long>(i));
        }
        const Family f(GroundParams(n, k), pick);
        const int ell = 3 + static_cast<int>(rng() % 3);
        if (f.size() < static_cast<std::size_t>(ell)) continue;
        const auto ref = oracle::min_pairsum(plain(f), ell);
        const auto bb = min_pairsum_bnb(f, ell, std::nullopt);
        REQUIRE(bb);
        REQUIRE(bb->value == ref.value);
        REQUIRE(bb->witness == ref.witness);
    }
}

}
