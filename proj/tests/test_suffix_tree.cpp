#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "fpindex/seqcore.hpp"
#include "fpindex/suffix_tree.hpp"
#include "helpers.hpp"

using namespace fpindex;

namespace {

// Characters on the root-to-v path, collected from the re-anchored intervals.
std::vector<Rank> path_word(const SuffixTree& st, const Sequence& s,
                            SuffixTree::NodeId v) {
    std::vector<std::pair<Pos, Pos>> ivs;
    for (auto u = v; u != SuffixTree::kRoot; u = st.parent(u)) {
        ivs.push_back(st.edge_interval(u));
    }
    std::reverse(ivs.begin(), ivs.end());
    std::vector<Rank> w;
    for (auto [k, l] : ivs) {
        for (Pos p = k; p <= l; ++p) w.push_back(s.rank_at(p));
    }
    return w;
}

std::vector<Rank> slice(const Sequence& s, Pos i, Pos j) {
    std::vector<Rank> w;
    for (Pos p = i; p <= j; ++p) w.push_back(s.rank_at(p));
    return w;
}

// First 1-based position where `w` occurs in s_1..s_{n+1}, or 0.
Pos leftmost_occurrence(const Sequence& s, const std::vector<Rank>& w) {
    const Pos n1 = s.n() + 1;
    if (w.empty() || w.size() > n1) return 0;
    for (Pos i = 1; i + static_cast<Pos>(w.size()) - 1 <= n1; ++i) {
        bool ok = true;
        for (Pos t = 0; t < static_cast<Pos>(w.size()); ++t) {
            if (s.rank_at(i + t) != w[t]) {
                ok = false;
                break;
            }
        }
        if (ok) return i;
    }
    return 0;
}

void check_invariants(const SuffixTree& st, const Sequence& s) {
    const Pos n1 = s.n() + 1;
    Pos leaves = 0;
    for (SuffixTree::NodeId v = 0; v < st.node_count(); ++v) {
        if (st.is_leaf(v)) {
            ++leaves;
            continue;
        }
        if (v != SuffixTree::kRoot) CHECK(st.children(v).size() >= 2);
        // Children sorted by first edge character, keys match the intervals.
        Rank prev = 0;
        bool first = true;
        for (auto [r, c] : st.children(v)) {
            if (!first) CHECK(prev < r);
            prev = r;
            first = false;
            auto [k, l] = st.edge_interval(c);
            CHECK(s.rank_at(k) == r);
            CHECK(k <= l);
            CHECK(l <= n1);
            CHECK(l - k + 1 == st.str_depth(c) - st.str_depth(v));
            CHECK(k == st.min_suffix(c) + st.str_depth(v));
            CHECK(st.min_suffix(c) >= st.min_suffix(v));
        }
    }
    CHECK(leaves == n1);
    // Each suffix is spelled by exactly its leaf's root path.
    for (Pos i = 1; i <= n1; ++i) {
        auto leaf = st.leaf_for_suffix(i);
        CHECK(st.leaf_suffix(leaf) == i);
        CHECK(st.str_depth(leaf) == n1 - i + 1);
        CHECK(path_word(st, s, leaf) == slice(s, i, n1));
    }
    // The root path of any node occurs nowhere before min_suffix.
    for (SuffixTree::NodeId v = 1; v < st.node_count(); ++v) {
        auto w = path_word(st, s, v);
        CHECK(leftmost_occurrence(s, w) == st.min_suffix(v));
    }
}

}  // namespace

TEST_SUITE("suffix_tree") {
    TEST_CASE("golden text: shape and anchoring") {
        auto [s, a] = normalize("abaceabacd");
        SuffixTree st(s);
        check_invariants(st, s);

        // 11 leaves, one per suffix including the sentinel-only one.
        auto all = st.subtree_suffixes(SuffixTree::kRoot);
        REQUIRE(all.size() == 11);
        for (Pos i = 1; i <= 11; ++i) CHECK(all[i - 1] == i);

        // The sentinel-only leaf hangs off the root with a length-1 edge.
        auto leaf11 = st.leaf_for_suffix(11);
        CHECK(st.parent(leaf11) == SuffixTree::kRoot);
        CHECK(st.edge_interval(leaf11) == std::pair<Pos, Pos>{11, 11});

        // Root has one child per distinct first character plus the sentinel.
        CHECK(st.children(SuffixTree::kRoot).size() == 6);

        // "abac" is a repeated prefix: its node covers suffixes 1 and 6.
        // Walk a-b-a-c from the root.
        auto w = fpindex::testing::spell(a, path_word(st, s, st.leaf_for_suffix(6)));
        CHECK(w == "abacd#");
    }

    TEST_CASE("golden text: every edge factor is anchored at its leftmost occurrence") {
        auto [s, a] = normalize("abaceabacd");
        SuffixTree st(s);
        for (SuffixTree::NodeId v = 1; v < st.node_count(); ++v) {
            auto [k, l] = st.edge_interval(v);
            CHECK(leftmost_occurrence(s, slice(s, k, l)) == k);
        }
    }

    TEST_CASE("random texts keep all structural invariants") {
        std::mt19937_64 rng(20260819);
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<int> len(1, 60), sig(1, 5);
            auto text = fpindex::testing::random_text(rng, len(rng), sig(rng));
            auto [s, a] = normalize(text);
            SuffixTree st(s);
            check_invariants(st, s);
        }
    }

    TEST_CASE("periodic and unary inputs") {
        for (const char* t : {"aaaaaaa", "abababab", "abcabcabc", "a"}) {
            auto [s, a] = normalize(t);
            SuffixTree st(s);
            check_invariants(st, s);
        }
    }

    TEST_CASE("subtree suffix listing matches leaf walk") {
        auto [s, a] = normalize("abcadabacbe");
        SuffixTree st(s);
        check_invariants(st, s);
        for (SuffixTree::NodeId v = 0; v < st.node_count(); ++v) {
            auto subs = st.subtree_suffixes(v);
            CHECK(!subs.empty());
            CHECK(std::is_sorted(subs.begin(), subs.end()));
            CHECK(subs.front() == st.min_suffix(v));
        }
    }

    TEST_CASE("dot export mentions every node") {
        auto [s, a] = normalize("abab");
        SuffixTree st(s);
        auto dot = st.to_dot(s, a);
        CHECK(dot.find("digraph") != std::string::npos);
        for (SuffixTree::NodeId v = 0; v < st.node_count(); ++v) {
            CHECK(dot.find("n" + std::to_string(v)) != std::string::npos);
        }
    }
}
