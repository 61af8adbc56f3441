#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fpindex/participation_tree.hpp"
#include "fpindex/seqcore.hpp"

namespace fpindex {

// A name stands for one distinct (level, pair) value in the naming stack;
// equal pairs at a level share a name, distinct pairs never do.
using Name = std::uint32_t;

struct RadixResult {
    std::vector<std::pair<Name, Name>> sorted;  // lexicographic order
    std::vector<Name> names;  // dense id per input pair, aligned with input
    Name distinct = 0;        // dense ids are 0..distinct-1, in sorted order
};

// Two-pass counting sort on (first, second); dense ids follow sorted order.
RadixResult radix_sort_pairs(const std::vector<std::pair<Name, Name>>& pairs);

struct NameListTrace {
    // Final table contents per level (bottom first) after the whole list is
    // applied, before the tables are rewound for the next call.
    std::vector<std::vector<Name>> levels;
};

// Names every prefix of incremental character-set change lists. The per-level
// pair dictionaries persist across calls, so two prefixes from different
// calls receive the same name exactly when they denote the same set.
class ListNamer {
  public:
    explicit ListNamer(Rank sigma);

    // changes holds pairwise-distinct ranks < sigma(); the i-th returned name
    // identifies the set of the first i+1 changes.
    std::vector<Name> name_list(const std::vector<Rank>& changes,
                                NameListTrace* trace = nullptr);

    Name empty_name() const { return empty_; }
    Rank sigma() const { return sigma_; }
    Rank padded_sigma() const { return padded_; }
    unsigned levels() const { return levels_; }
    // Total names issued so far, including the reserved 0 and 1.
    std::size_t name_count() const { return next_; }

  private:
    Name intern(unsigned level, Name a, Name b);

    Rank sigma_ = 0, padded_ = 1;
    unsigned levels_ = 0;
    Name next_ = 2, empty_ = 0;
    std::vector<Name> ninit_;  // ninit_[r]: blank-cell name of level r+1
    std::vector<std::vector<Name>> table_;  // per-level working arrays
    std::vector<std::unordered_map<std::uint64_t, Name>> dict_;
};

struct FingerprintNaming {
    // One name per tree node (the character set of its root path); the root
    // carries the empty-set name.
    std::vector<Name> node_names;
    Name empty_name = 0;
    // Distinct pairs named per level, for size accounting.
    std::vector<std::size_t> level_new_names;
};

// Names the character set of every root path of the tree in logarithmically
// many sweeps, each a depth-first walk that edits one table cell on the way
// down and restores it on the way up.
FingerprintNaming name_fingerprints(const ParticipationTree& pt, Rank sigma);

}  // namespace fpindex
