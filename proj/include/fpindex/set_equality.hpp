#pragma once

#include <cstdint>
#include <vector>

#include "fpindex/seqcore.hpp"

namespace fpindex {

// Reusable working memory for the deterministic set-comparison routines.
// Every routine restores the scratch to its pristine state (all bits zero,
// all partition cells and lists empty) before returning or throwing, so one
// scratch can serve any number of queries in sequence.
class EqualityScratch {
  public:
    explicit EqualityScratch(Rank sigma);

    Rank sigma() const { return sigma_; }

    // True iff the scratch is in its pristine state. Cheap enough to call
    // after every comparison in tests.
    bool clean() const;

  private:
    friend bool eq_bits(const std::vector<Rank>&, const std::vector<Rank>&, EqualityScratch&);
    friend bool eq_partitioned(const std::vector<Rank>&, const std::vector<Rank>&, unsigned,
                               EqualityScratch&);

    // One partitioning round: cells indexed by the current bit slice, plus
    // the occupancy lists used to visit and clean exactly the touched cells.
    struct Level {
        std::vector<std::vector<Rank>> cells1, cells2;
        std::vector<std::uint32_t> used1, used2;
    };

    void configure(unsigned k);
    bool partition_round(unsigned depth, unsigned k, const std::vector<Rank>& run1,
                         const std::vector<Rank>& run2);
    bool descend(unsigned depth, unsigned k, const std::vector<Rank>& run1,
                 const std::vector<Rank>& run2);

    Rank sigma_;
    std::vector<std::uint64_t> bits_;  // sigma bits, word-packed

    // Lazily sized for the most recent partition depth.
    unsigned k_ = 0;
    unsigned total_bits_ = 0;
    std::vector<unsigned> width_;  // slice widths, most significant first
    std::vector<unsigned> shift_;  // right-shift that exposes each slice
    std::vector<Level> levels_;    // k-1 partitioning rounds
};

// True iff s1 and s2 are permutations of the same set of distinct ranks.
// Two-phase bit-table method: mark every rank of s1, then consume marks while
// scanning s2. O(|s1|) time, sigma bits of working space.
// Throws LengthMismatch, RankOutOfRange, or DuplicateCharacter (a repeated
// rank inside either string is a caller bug, not inequality).
bool eq_bits(const std::vector<Rank>& s1, const std::vector<Rank>& s2, EqualityScratch& scratch);

// Same contract as eq_bits, but backed by a per-call hash table instead of a
// sigma-bit array, so the working space is proportional to |s1| and no
// alphabet bound is needed.
bool eq_hash(const std::vector<Rank>& s1, const std::vector<Rank>& s2);

// Same boolean contract, computed with k-1 rounds of most-significant-slice
// partitioning followed by a bit-table comparison of the least significant
// slice. Runs in O(k * |s1|) time; the tables only ever hold about
// sigma^(1/k) cells per round. A run-length mismatch between paired
// partitions is inequality (false), not an error. Requires 2 <= k <= 64.
bool eq_partitioned(const std::vector<Rank>& s1, const std::vector<Rank>& s2, unsigned k,
                    EqualityScratch& scratch);

}  // namespace fpindex
