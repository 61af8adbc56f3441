#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fpindex/fingerprint_index.hpp"
#include "helpers.hpp"
#include "fpindex/oracle.hpp"

using namespace fpindex;
using namespace fpindex::testing;

namespace {

std::vector<std::vector<Rank>> rw(std::initializer_list<const char*> words) {
    std::vector<std::vector<Rank>> out;
    for (const char* w : words) {
        std::vector<Rank>& v = out.emplace_back();
        for (const char* p = w; *p; ++p) v.push_back(static_cast<Rank>(*p - 'a'));
    }
    return out;
}

// Query string whose characters carry the given ranks of this alphabet.
std::string text_of(const Alphabet& a, const std::vector<Rank>& ranks) {
    std::string out;
    for (Rank r : ranks) out.push_back(static_cast<char>(a.unrank(r)));
    return out;
}

void check_against_oracle(const FingerprintIndex& idx, const GroundTruth& truth,
                          const Sequence& s, const Alphabet& a, std::mt19937_64& rng) {
    REQUIRE(idx.fingerprint_count() == truth.fingerprint_count());

    // Every oracle fingerprint is found and reports exactly its locations.
    std::size_t reported = 0;
    for (const Fingerprint& f : truth.fingerprints) {
        std::string q = text_of(a, f.ranks());
        std::shuffle(q.begin(), q.end(), rng);
        CHECK(idx.exists(q));
        std::vector<MaximalLocation> got = idx.report(q);
        CHECK(got == truth.locations_of(f));
        CHECK(std::is_sorted(got.begin(), got.end()));
        reported += got.size();
    }
    CHECK(reported == truth.location_count());
    CHECK(idx.location_count() == truth.location_count());

    // Exhaustive membership over all subsets when the alphabet is small.
    if (s.sigma() <= 10) {
        for (std::uint32_t mask = 1; mask < (1u << s.sigma()); ++mask) {
            Fingerprint f(s.sigma());
            std::string q;
            for (Rank r = 0; r < s.sigma(); ++r)
                if (mask & (1u << r)) {
                    f.add(r);
                    q.push_back(static_cast<char>(a.unrank(r)));
                }
            CHECK(idx.exists(q) == truth.has_fingerprint(f));
        }
    }
}

}  // namespace

TEST_CASE("trie from one-character spellings") {
    FingerprintTrie t = FingerprintTrie::from_words(rw({"a"}), 1);
    CHECK(t.node_count() == 2);
    CHECK(t.parent(1) == FingerprintTrie::kRoot);
    CHECK(t.label(1) == 0);
    CHECK(t.depth(1) == 1);
    CHECK(t.child(FingerprintTrie::kRoot, 0) == 1);
    CHECK(t.child(1, 0) == FingerprintTrie::kNoNode);
}

TEST_CASE("trie hangs a two-character set under its spelling's prefix") {
    FingerprintTrie t = FingerprintTrie::from_words(rw({"a", "b", "ab"}), 2);
    CHECK(t.node_count() == 4);
    // "ab" ends in b, so {a,b} must hang under {a}.
    FingerprintTrie::NodeId na = t.child(FingerprintTrie::kRoot, 0);
    FingerprintTrie::NodeId nb = t.child(FingerprintTrie::kRoot, 1);
    REQUIRE(na != FingerprintTrie::kNoNode);
    REQUIRE(nb != FingerprintTrie::kNoNode);
    CHECK(t.child(na, 1) != FingerprintTrie::kNoNode);
    CHECK(t.child(nb, 0) == FingerprintTrie::kNoNode);
    CHECK(t.word_of(t.child(na, 1)) == std::vector<Rank>{0, 1});
}

TEST_CASE("trie accepts spellings in any input order") {
    FingerprintTrie t = FingerprintTrie::from_words(rw({"bac", "a", "ba", "b"}), 3);
    CHECK(t.node_count() == 5);
    std::vector<Rank> w = {1, 0, 2};
    CHECK(t.walk(w) != FingerprintTrie::kNoNode);
}

TEST_CASE("trie reports node ids for spellings that are not root paths") {
    // {a,b} is spelled "ba", so the root path of {a,b,c} becomes "bac" and
    // the input spelling "abc" cannot be walked; the id map still finds it.
    std::vector<FingerprintTrie::NodeId> nodes;
    FingerprintTrie t = FingerprintTrie::from_words(rw({"a", "b", "ba", "abc"}), 3, &nodes);
    REQUIRE(nodes.size() == 4);
    CHECK(t.node_count() == 5);
    std::vector<Rank> abc = {0, 1, 2};
    CHECK(t.walk(abc) == FingerprintTrie::kNoNode);
    CHECK(nodes[3] != FingerprintTrie::kNoNode);
    CHECK(t.word_of(nodes[3]) == std::vector<Rank>{1, 0, 2});
    CHECK(t.depth(nodes[3]) == 3);
    CHECK(t.label(nodes[3]) == 2);
}

TEST_CASE("trie rejects malformed spelling families") {
    CHECK_THROWS_AS(FingerprintTrie::from_words(rw({"a", "ab", "ba"}), 2), DuplicateSets);
    CHECK_THROWS_AS(FingerprintTrie::from_words(rw({"a", ""}), 1), DuplicateSets);
    CHECK_THROWS_AS(FingerprintTrie::from_words(rw({"a", "bc"}), 3), NotPrefixClosed);
    CHECK_THROWS_AS(FingerprintTrie::from_words(rw({"ab"}), 2), NotPrefixClosed);
    CHECK_THROWS_AS(FingerprintTrie::from_words(rw({"a", "aa"}), 1), DuplicateCharacter);
    CHECK_THROWS_AS(FingerprintTrie::from_words(rw({"b"}), 1), RankOutOfRange);
}

TEST_CASE("trie round-trips through parent and label arrays") {
    FingerprintTrie t = FingerprintTrie::from_words(rw({"a", "b", "ab", "abc"}), 3);
    std::vector<FingerprintTrie::NodeId> parents;
    std::vector<Rank> labels;
    for (FingerprintTrie::NodeId v = 0; v < t.node_count(); ++v) {
        parents.push_back(t.parent(v));
        labels.push_back(t.label(v));
    }
    FingerprintTrie back = FingerprintTrie::from_arrays(parents, labels, 3);
    REQUIRE(back.node_count() == t.node_count());
    for (FingerprintTrie::NodeId v = 1; v < t.node_count(); ++v) {
        CHECK(back.parent(v) == t.parent(v));
        CHECK(back.label(v) == t.label(v));
        CHECK(back.depth(v) == t.depth(v));
        CHECK(back.walk(t.word_of(v)) == v);
    }
}

TEST_CASE("trie array validation rejects corrupted shapes") {
    using T = FingerprintTrie;
    CHECK_THROWS_AS(T::from_arrays({}, {}, 1), FormatError);
    CHECK_THROWS_AS(T::from_arrays({1}, {0}, 1), FormatError);           // root not first
    CHECK_THROWS_AS(T::from_arrays({0, 1}, {0, 0}, 1), FormatError);     // parent after child
    CHECK_THROWS_AS(T::from_arrays({0, 0, 0}, {0, 0, 0}, 1), FormatError);  // repeated edge
    CHECK_THROWS_AS(T::from_arrays({0, 0, 1}, {0, 0, 0}, 2), FormatError);  // repeated char
    // Two root paths spelling the same set: a-b and b-a.
    CHECK_THROWS_AS(T::from_arrays({0, 0, 0, 1, 2}, {0, 0, 1, 1, 0}, 2), FormatError);
    CHECK_THROWS_AS(T::from_arrays({0, 0}, {0, 5}, 2), FormatError);     // label out of range
}

TEST_CASE("backtracking associations recover every spelling") {
    std::mt19937_64 rng(71);
    FingerprintTrie t = FingerprintTrie::from_words(rw({"a", "b", "c", "ab", "cb", "abc"}), 3);
    BacktrackFunction bt = BacktrackFunction::build(t, rng);

    const std::uint64_t m = t.node_count() - 1;
    CHECK(bt.size() == m);
    CHECK(bt.params().P() >= std::max<std::uint64_t>(2, m * m * 3));
    CHECK(bt.params().P() <= 2 * m * m * 3);

    for (FingerprintTrie::NodeId v = 1; v < t.node_count(); ++v) {
        std::vector<Rank> w = t.word_of(v);
        std::uint64_t h = bt.hash_of(w);
        CHECK(bt.lookup(h) == t.label(v));
        // Peeling one character lands on the parent's hash.
        std::vector<Rank> pw = t.word_of(t.parent(v));
        CHECK(bt.peel(h, t.label(v)) == bt.hash_of(pw));
    }
    CHECK(bt.hash_of(std::vector<Rank>{}) == 0);

    // Unknown values answer with some in-range rank, never an error.
    for (std::uint64_t h = 0; h < 50; ++h) CHECK(bt.lookup(h % bt.params().P()) < 3);

    // Round trip through the association list.
    BacktrackFunction copy = BacktrackFunction::from_pairs(bt.params(), bt.associations());
    CHECK(copy.size() == bt.size());
    for (FingerprintTrie::NodeId v = 1; v < t.node_count(); ++v) {
        std::vector<Rank> w = t.word_of(v);
        CHECK(copy.lookup(copy.hash_of(w)) == t.label(v));
    }
}

TEST_CASE("backtracking rejects corrupted association lists") {
    std::mt19937_64 rng(72);
    FingerprintTrie t = FingerprintTrie::from_words(rw({"a", "b"}), 2);
    BacktrackFunction bt = BacktrackFunction::build(t, rng);
    auto pairs = bt.associations();
    REQUIRE(pairs.size() == 2);

    auto dup = pairs;
    dup[1].first = dup[0].first;
    CHECK_THROWS_AS(BacktrackFunction::from_pairs(bt.params(), dup), FormatError);

    auto big = pairs;
    big[0].first = bt.params().P();
    CHECK_THROWS_AS(BacktrackFunction::from_pairs(bt.params(), big), FormatError);

    auto badrank = pairs;
    badrank[0].second = 9;
    CHECK_THROWS_AS(BacktrackFunction::from_pairs(bt.params(), badrank), FormatError);
}

TEST_CASE("golden index answers the worked example in every build mode") {
    auto [s, a] = normalize("abaceabacd");
    GroundTruth truth = oracle_all(s);

    for (BuildMode mode : {BuildMode::Exact, BuildMode::Randomized, BuildMode::MonteCarlo}) {
        CAPTURE(static_cast<int>(mode));
        std::mt19937_64 rng(1234);
        FingerprintIndex idx = FingerprintIndex::build(s, a, mode, rng);

        CHECK(idx.fingerprint_count() == 17);
        CHECK(idx.location_count() == 25);
        CHECK(idx.trie().node_count() == 18);

        CHECK(idx.exists("ca"));
        CHECK(idx.exists("ac"));
        CHECK_FALSE(idx.exists("bd"));
        CHECK(idx.exists("abcde"));
        CHECK(idx.exists("edcba"));
        CHECK_FALSE(idx.exists(""));
        CHECK_FALSE(idx.exists("z"));
        CHECK_FALSE(idx.exists("az"));
        CHECK(idx.exists("aa") == idx.exists("a"));
        CHECK(idx.exists("aca"));  // duplicates collapse to {a,c}

        CHECK(idx.report("ac") ==
              std::vector<MaximalLocation>{{3, 4}, {8, 9}});
        CHECK(idx.report("a") ==
              std::vector<MaximalLocation>{{1, 1}, {3, 3}, {6, 6}, {8, 8}});
        CHECK(idx.report("eabcd") == std::vector<MaximalLocation>{{1, 10}});
        CHECK(idx.report("eabc") == std::vector<MaximalLocation>{{1, 9}});
        CHECK_THROWS_AS(idx.report("bd"), UnknownFingerprint);
        CHECK_THROWS_AS(idx.report(""), UnknownFingerprint);
        CHECK_THROWS_AS(idx.report("z"), UnknownFingerprint);

        // Raw coordinates equal normalized ones here: no byte repeats runs.
        auto raw = idx.report_raw("ac");
        REQUIRE(raw.size() == 2);
        CHECK(raw[0] == std::pair<std::uint64_t, std::uint64_t>{3, 4});
        CHECK(raw[1] == std::pair<std::uint64_t, std::uint64_t>{8, 9});

        check_against_oracle(idx, truth, s, a, rng);
    }
}

TEST_CASE("run-collapsing text keeps raw coordinates") {
    auto [s, a] = normalize("aabbaacc");
    std::mt19937_64 rng(5);
    FingerprintIndex idx = FingerprintIndex::build(s, a, BuildMode::Exact, rng);
    // Normalized text is "abac"; {a,b} occurs as positions 1..3 raw 1..6.
    auto raw = idx.report_raw("ab");
    REQUIRE(raw.size() == 1);
    CHECK(raw[0].first == 1);
    CHECK(raw[0].second == 6);
}

TEST_CASE("every build mode matches the oracle on random texts") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 12; ++trial) {
        std::uint32_t sigma = 2 + static_cast<std::uint32_t>(rng() % 5);
        std::size_t len = 2 + static_cast<std::size_t>(rng() % 120);
        std::string text = random_text(rng, len, sigma);
        auto [s, a] = normalize(text);
        GroundTruth truth = oracle_all(s);
        CAPTURE(text);
        for (BuildMode mode : {BuildMode::Exact, BuildMode::Randomized, BuildMode::MonteCarlo}) {
            CAPTURE(static_cast<int>(mode));
            FingerprintIndex idx = FingerprintIndex::build(s, a, mode, rng);
            check_against_oracle(idx, truth, s, a, rng);
        }
    }
}

TEST_CASE("equality method choice does not change any answer") {
    std::mt19937_64 rng(31);
    std::string text = random_text(rng, 150, 9);
    auto [s, a] = normalize(text);
    GroundTruth truth = oracle_all(s);
    FingerprintIndex idx = FingerprintIndex::build(s, a, BuildMode::Exact, rng);

    CHECK(idx.equality_method() == EqualityMethod::Bits);
    for (auto [method, rounds] : {std::pair{EqualityMethod::Bits, 2u},
                                  std::pair{EqualityMethod::Hash, 2u},
                                  std::pair{EqualityMethod::Partitioned, 2u},
                                  std::pair{EqualityMethod::Partitioned, 4u}}) {
        idx.set_equality_method(method, rounds);
        CHECK(idx.equality_method() == method);
        check_against_oracle(idx, truth, s, a, rng);
    }
    CHECK_THROWS_AS(idx.set_equality_method(EqualityMethod::Partitioned, 1), KOutOfRange);
    CHECK_THROWS_AS(idx.set_equality_method(EqualityMethod::Partitioned, 65), KOutOfRange);
}

TEST_CASE("peeling recovers the exact trie spelling of every fingerprint") {
    std::mt19937_64 rng(7);
    std::string text = random_text(rng, 200, 8);
    auto [s, a] = normalize(text);
    FingerprintIndex idx = FingerprintIndex::build(s, a, BuildMode::Exact, rng);
    const FingerprintTrie& t = idx.trie();
    const BacktrackFunction& bt = idx.backtrack();

    for (FingerprintTrie::NodeId v = 1; v < t.node_count(); ++v) {
        std::vector<Rank> w = t.word_of(v);
        std::uint64_t h = bt.hash_of(w);
        std::vector<Rank> peeled;
        for (std::size_t step = 0; step < w.size(); ++step) {
            Rank r = bt.lookup(h);
            peeled.push_back(r);
            h = bt.peel(h, r);
        }
        CHECK(h == 0);
        std::reverse(peeled.begin(), peeled.end());
        CHECK(peeled == w);
    }
}

TEST_CASE("names-only mode answers membership but refuses reports") {
    auto [s, a] = normalize("abaceabacd");
    std::mt19937_64 rng(99);
    FingerprintIndex idx =
        FingerprintIndex::build(s, a, BuildMode::MonteCarlo, rng, 2, /*mc_locations=*/false);
    CHECK(idx.report_kind() == ReportKind::NamesOnly);
    CHECK(idx.fingerprint_count() == 17);
    CHECK(idx.location_count() == 0);
    CHECK(idx.exists("ac"));
    CHECK_FALSE(idx.exists("bd"));
    CHECK_THROWS_WITH_AS(idx.report("ac"),
                         "this index stores fingerprint names only, not their locations", Error);
}

TEST_CASE("caller-provided scratch answers match and stay clean") {
    std::mt19937_64 rng(13);
    std::string text = random_text(rng, 80, 6);
    auto [s, a] = normalize(text);
    FingerprintIndex idx = FingerprintIndex::build(s, a, BuildMode::Randomized, rng);

    EqualityScratch scratch(s.sigma());
    for (int trial = 0; trial < 300; ++trial) {
        std::string q;
        std::size_t len = rng() % 5;
        for (std::size_t t = 0; t < len; ++t)
            q.push_back(static_cast<char>('a' + rng() % (s.sigma() + 1)));
        CHECK(idx.exists(q, scratch) == idx.exists(q));
        CHECK(scratch.clean());
    }
}

TEST_CASE("index reassembly validates cross-section coherence") {
    auto [s, a] = normalize("abaceabacd");
    std::mt19937_64 rng(55);
    FingerprintIndex idx = FingerprintIndex::build(s, a, BuildMode::Exact, rng);

    // A faithful reassembly answers identically.
    std::vector<std::vector<FingerprintIndex::PathEntry>> entries = idx.tree_entries();
    FingerprintIndex copy = FingerprintIndex::from_parts(
        idx.sequence(), idx.alphabet(), idx.report_kind(), idx.trie(), idx.backtrack(), entries,
        {});
    CHECK(copy.report("ac") == idx.report("ac"));
    CHECK(copy.exists("ca"));

    // Kind/report mismatches are rejected.
    CHECK_THROWS_AS(FingerprintIndex::from_parts(idx.sequence(), idx.alphabet(),
                                                 ReportKind::LocationLists, idx.trie(),
                                                 idx.backtrack(), entries, {}),
                    FormatError);
    CHECK_THROWS_AS(FingerprintIndex::from_parts(idx.sequence(), idx.alphabet(),
                                                 ReportKind::TreePaths, idx.trie(),
                                                 idx.backtrack(), {}, {}),
                    FormatError);
    auto bad = entries;
    for (auto& list : bad)
        for (auto& e : list) e.support = 0;
    CHECK_THROWS_AS(FingerprintIndex::from_parts(idx.sequence(), idx.alphabet(),
                                                 ReportKind::TreePaths, idx.trie(),
                                                 idx.backtrack(), bad, {}),
                    FormatError);

    // Alphabet of the wrong size is rejected.
    Alphabet small;
    small.intern('a');
    CHECK_THROWS_AS(FingerprintIndex::from_parts(idx.sequence(), small, ReportKind::TreePaths,
                                                 idx.trie(), idx.backtrack(), entries, {}),
                    FormatError);
}

TEST_CASE("single-character and unary texts index correctly") {
    {
        auto [s, a] = normalize("a");
        std::mt19937_64 rng(1);
        for (BuildMode mode : {BuildMode::Exact, BuildMode::Randomized, BuildMode::MonteCarlo}) {
            FingerprintIndex idx = FingerprintIndex::build(s, a, mode, rng);
            CHECK(idx.fingerprint_count() == 1);
            CHECK(idx.exists("a"));
            CHECK_FALSE(idx.exists("b"));
            CHECK(idx.report("a") == std::vector<MaximalLocation>{{1, 1}});
        }
    }
    {
        auto [s, a] = normalize("aaaaaa");  // collapses to one position
        std::mt19937_64 rng(2);
        FingerprintIndex idx = FingerprintIndex::build(s, a, BuildMode::Exact, rng);
        CHECK(idx.fingerprint_count() == 1);
        auto raw = idx.report_raw("a");
        REQUIRE(raw.size() == 1);
        CHECK(raw[0] == std::pair<std::uint64_t, std::uint64_t>{1, 6});
    }
}
