#include <doctest.h>

#include <set>

#include "fpindex/oracle.hpp"
#include "helpers.hpp"

using namespace fpindex;
using fpindex::testing::spell;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("golden sequence counts") {
    auto [s, a] = normalize("abaceabacd");
    auto gt = oracle_all(s);
    CHECK(gt.fingerprint_count() == 17);
    CHECK(gt.location_count() == 25);
    CHECK(gt.class_count() == 17);
}

TEST_CASE("golden sequence spot locations") {
    auto [s, a] = normalize("abaceabacd");
    auto gt = oracle_all(s);

    Fingerprint ac(s.sigma());
    ac.add(static_cast<Rank>(a.rank('a')));
    ac.add(static_cast<Rank>(a.rank('c')));
    auto locs = gt.locations_of(ac);
    REQUIRE(locs.size() == 2);
    CHECK(locs[0] == MaximalLocation{3, 4});
    CHECK(locs[1] == MaximalLocation{8, 9});

    Fingerprint just_a(s.sigma());
    just_a.add(static_cast<Rank>(a.rank('a')));
    auto singles = gt.locations_of(just_a);
    REQUIRE(singles.size() == 4);
    CHECK(singles[0] == MaximalLocation{1, 1});
    CHECK(singles[1] == MaximalLocation{3, 3});
    CHECK(singles[2] == MaximalLocation{6, 6});
    CHECK(singles[3] == MaximalLocation{8, 8});

    Fingerprint bd(s.sigma());
    bd.add(static_cast<Rank>(a.rank('b')));
    bd.add(static_cast<Rank>(a.rank('d')));
    CHECK(!gt.has_fingerprint(bd));
}

TEST_CASE("two-letter and tiny sequences") {
    auto [s, a] = normalize("ab");
    auto gt = oracle_all(s);
    CHECK(gt.location_count() == 3);  // <1,1>, <2,2>, <1,2>
    CHECK(gt.fingerprint_count() == 3);

    auto [t, b] = normalize("aabab");  // normalizes to abab
    auto g2 = oracle_all(t);
    CHECK(g2.location_count() == 5);
    CHECK(g2.class_count() == 3);
    CHECK(g2.fingerprint_count() == 3);

    auto [u, c] = normalize("aaaa");  // single position
    auto g3 = oracle_all(u);
    CHECK(g3.location_count() == 1);
    CHECK(g3.fingerprint_count() == 1);
}

TEST_CASE("maximal locations agree with extend images") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        auto text = fpindex::testing::random_text(rng, 10 + rng() % 50, 2 + rng() % 5);
        auto [s, a] = normalize(text);
        auto gt = oracle_all(s);

        std::set<std::pair<Pos, Pos>> via_extend;
        for (Pos i = 1; i <= s.n(); ++i)
            for (Pos j = i; j <= s.n(); ++j) {
                auto m = extend(s, i, j);
                via_extend.insert({m.i, m.j});
            }
        std::set<std::pair<Pos, Pos>> via_scan;
        for (const auto& ol : gt.locations) via_scan.insert({ol.loc.i, ol.loc.j});
        CHECK(via_extend == via_scan);
    }
}

TEST_CASE("copy classes refine fingerprint groups and |L| <= n*sigma") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        auto text = fpindex::testing::random_text(rng, 10 + rng() % 60, 2 + rng() % 6);
        auto [s, a] = normalize(text);
        auto gt = oracle_all(s);
        CHECK(gt.location_count() <= static_cast<std::size_t>(s.n()) * s.sigma());
        CHECK(gt.fingerprint_count() <= gt.class_count());
        CHECK(gt.class_count() <= gt.location_count());
        // Everything in one copy class shares one fingerprint.
        for (const auto& cls : gt.classes) {
            REQUIRE(!cls.empty());
            const auto& f0 = gt.locations[cls[0]].fingerprint;
            for (auto idx : cls) CHECK(gt.locations[idx].fingerprint == f0);
        }
    }
}

TEST_CASE("support and label of each location") {
    auto [s, a] = normalize("abaceabacd");
    auto gt = oracle_all(s);
    for (const auto& ol : gt.locations) {
        CHECK(ol.support >= ol.loc.i);
        CHECK(ol.support <= ol.loc.j);
        CHECK(ol.label.size() == ol.fingerprint.size());
    }
    // <1,9> has support 5 and label eabc.
    for (const auto& ol : gt.locations)
        if (ol.loc == MaximalLocation{1, 9}) {
            CHECK(ol.support == 5);
            CHECK(spell(a, ol.label) == "eabc");
        }
}

TEST_CASE("gen_wk family") {
    CHECK(gen_wk(1) == "a");
    CHECK(gen_wk(2) == "aabab");
    for (unsigned k = 1; k <= 8; ++k)
        CHECK(gen_wk(k).size() == k * (k + 1) * (2 * k + 1) / 6);
    CHECK_THROWS_AS(gen_wk(0), KOutOfRange);
    CHECK_THROWS_AS(gen_wk(27), KOutOfRange);
}

TEST_CASE("w2 counts") {
    auto [s, a] = normalize(gen_wk(2));
    CHECK(s.n() == 4);  // abab after collapsing
    auto gt = oracle_all(s);
    CHECK(gt.location_count() == 5);
    CHECK(gt.class_count() == 3);
}

TEST_CASE("oracle cap") {
    auto [s, a] = normalize("abcabcabc");
    CHECK_THROWS_AS(oracle_all(s, 5), CapExceeded);
}

TEST_SUITE_END();
