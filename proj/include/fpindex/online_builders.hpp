#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <unordered_map>
#include <vector>

#include "fpindex/naming.hpp"
#include "fpindex/seqcore.hpp"

namespace fpindex {

// The stream of character-set changes anchored at one support position m:
// the ordered distinct characters first occurring in s_m.., cut off at the
// next occurrence of s_m (or at the sentinel). The t-th nonempty proper
// prefix of that stream is the character set of exactly one maximal location
// whose support is m, stored in locations[t-1]. Every maximal location of the
// sequence appears under exactly one support this way.
struct ChangeList {
    Pos support = 0;
    std::vector<Rank> chars;      // pairwise distinct, never the sentinel
    std::vector<Pos> first_pos;   // first_pos[t]: position of chars[t], >= support
    bool sentinel_terminated = false;
    std::vector<MaximalLocation> locations;  // one per counted prefix, nested

    // Number of maximal locations contributed: every prefix counts when the
    // stream ran into the sentinel, otherwise the full stream is excluded.
    std::size_t location_count() const { return locations.size(); }
};

// Visits the change list of every support position m = n..1 (descending: the
// first-occurrence list slides right to left). The visited object is reused
// between calls; copy it to keep it.
void enumerate_change_lists(const Sequence& s, const std::function<void(const ChangeList&)>& visit);

// All change lists in ascending support order. Convenience for tests and
// small inputs; the visitor form streams in O(sigma) working memory.
std::vector<ChangeList> all_change_lists(const Sequence& s);

// Exact fingerprint naming without materializing the tree or the change
// lists: each change list is pushed through the level-by-level namer as soon
// as it is produced. Distinct names correspond one-to-one to distinct
// fingerprints of s.
struct NameBuildResult {
    // name -> locations of that fingerprint, in enumeration order. Holds only
    // the first-seen witness unless locations were requested.
    std::unordered_map<Name, std::vector<MaximalLocation>> names;
    std::size_t change_count = 0;  // total named prefixes over all lists

    std::size_t fingerprint_count() const { return names.size(); }
};

NameBuildResult build_names_randomized(const Sequence& s, ListNamer& namer,
                                       bool collect_locations = false);
NameBuildResult build_names_randomized(const Sequence& s, bool collect_locations = false);

// Monte Carlo naming: fingerprints are identified by a polynomial hash value
// H(f) = sum over ranks e in f of r^e mod P instead of an exact name. P is a
// prime above n^(c+2) * sigma^3, which keeps the probability that any two of
// the at most n*sigma fingerprints collide below n^-c. One arithmetic update
// per change, no per-level work.
struct McBuildResult {
    std::uint64_t prime = 0;
    std::uint64_t point = 0;  // the random evaluation point r
    std::unordered_map<std::uint64_t, std::vector<MaximalLocation>> names;
    std::size_t change_count = 0;

    std::size_t fingerprint_count() const { return names.size(); }
};

// Throws ModulusTooLarge when the required prime bound reaches 2^61 (products
// must stay in double-width words), KOutOfRange when c < 1.
McBuildResult build_mc(const Sequence& s, unsigned c, std::mt19937_64& rng,
                       bool collect_locations = false);

}  // namespace fpindex
