#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fpindex/errors.hpp"

namespace fpindex {

using Rank = std::uint32_t;
using Pos = std::uint32_t;  // 1-based position in the normalized sequence

// Maps the distinct bytes of the input to dense ranks 0..sigma-1, in order of
// first appearance. The sentinel that terminates a normalized sequence is not
// part of the alphabet; it always has rank sigma.
class Alphabet {
  public:
    Alphabet() { rank_of_.fill(-1); }

    Rank intern(unsigned char c) {
        if (rank_of_[c] < 0) {
            rank_of_[c] = static_cast<int>(unrank_.size());
            unrank_.push_back(c);
        }
        return static_cast<Rank>(rank_of_[c]);
    }

    // -1 when the byte never occurred in the source text.
    int rank(unsigned char c) const { return rank_of_[c]; }

    unsigned char unrank(Rank r) const {
        if (r >= unrank_.size()) throw RankOutOfRange("unrank: rank " + std::to_string(r));
        return unrank_[r];
    }

    std::uint32_t sigma() const { return static_cast<std::uint32_t>(unrank_.size()); }

  private:
    std::array<int, 256> rank_of_{};
    std::vector<unsigned char> unrank_;
};

// A set of character ranks over a fixed alphabet size, with cached cardinality.
class Fingerprint {
  public:
    Fingerprint() = default;
    explicit Fingerprint(std::uint32_t sigma)
        : sigma_(sigma), words_((sigma + 63) / 64, 0) {}

    void add(Rank r) {
        check(r);
        std::uint64_t& w = words_[r >> 6];
        std::uint64_t bit = 1ULL << (r & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    bool contains(Rank r) const {
        check(r);
        return (words_[r >> 6] >> (r & 63)) & 1;
    }

    std::uint32_t size() const { return count_; }
    std::uint32_t sigma() const { return sigma_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    // Ranks in increasing order.
    std::vector<Rank> ranks() const {
        std::vector<Rank> out;
        out.reserve(count_);
        for (Rank r = 0; r < sigma_; ++r)
            if (contains(r)) out.push_back(r);
        return out;
    }

    bool operator==(const Fingerprint& o) const {
        return sigma_ == o.sigma_ && words_ == o.words_;
    }

    struct Hash {
        std::size_t operator()(const Fingerprint& f) const {
            std::size_t h = 0xcbf29ce484222325ULL;
            for (std::uint64_t w : f.words_) {
                h ^= w;
                h *= 0x100000001b3ULL;
            }
            return h;
        }
    };

  private:
    void check(Rank r) const {
        if (r >= sigma_) throw RankOutOfRange("fingerprint rank " + std::to_string(r) +
                                              " >= sigma " + std::to_string(sigma_));
    }

    std::uint32_t sigma_ = 0;
    std::uint32_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

// A maximal location <i,j>: the occurrence interval of a maximal set of
// positions sharing one character set, in normalized 1-based coordinates.
struct MaximalLocation {
    Pos i = 0;
    Pos j = 0;
    bool operator==(const MaximalLocation& o) const { return i == o.i && j == o.j; }
    bool operator<(const MaximalLocation& o) const {
        return i != o.i ? i < o.i : j < o.j;
    }
};

// A simple sequence (no two equal adjacent characters) of ranks, terminated by
// a sentinel of rank sigma at position n+1. Positions are 1-based throughout.
// run(i) maps position i back to the raw-input interval it was collapsed from.
class Sequence {
  public:
    Sequence() = default;

    Pos n() const { return static_cast<Pos>(runs_.size()); }
    std::uint32_t sigma() const { return sigma_; }
    Rank sentinel_rank() const { return sigma_; }
    std::uint64_t raw_length() const { return raw_length_; }
    bool has_sentinel() const { return true; }

    // Rank at position pos, 1 <= pos <= n+1; position n+1 is the sentinel.
    Rank rank_at(Pos pos) const {
        if (pos < 1 || pos > n() + 1)
            throw IndexOutOfRange("position " + std::to_string(pos) + " outside [1, " +
                                  std::to_string(n() + 1) + "]");
        return pos == n() + 1 ? sigma_ : ranks_[pos - 1];
    }

    // Raw-input interval (1-based, inclusive) collapsed into position pos.
    std::pair<std::uint64_t, std::uint64_t> run(Pos pos) const {
        if (pos < 1 || pos > n())
            throw IndexOutOfRange("run position " + std::to_string(pos));
        return runs_[pos - 1];
    }

    friend std::pair<Sequence, Alphabet> normalize(const std::string& raw);
    friend Sequence sequence_from_parts(std::vector<Rank> ranks,
                                        std::vector<std::pair<std::uint64_t, std::uint64_t>> runs,
                                        std::uint32_t sigma, std::uint64_t raw_length);

  private:
    std::vector<Rank> ranks_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> runs_;
    std::uint32_t sigma_ = 0;
    std::uint64_t raw_length_ = 0;
};

// Rebuilds a sequence from stored fields (deserialization path). Validates
// simplicity, rank bounds, and run alignment; throws FormatError otherwise.
Sequence sequence_from_parts(std::vector<Rank> ranks,
                             std::vector<std::pair<std::uint64_t, std::uint64_t>> runs,
                             std::uint32_t sigma, std::uint64_t raw_length);

// Collapses runs of equal bytes and interns ranks in order of first
// appearance. The result is always simple and carries the sentinel.
std::pair<Sequence, Alphabet> normalize(const std::string& raw);

// Distinct ranks of s[i..j] as a set. The sentinel position n+1 is not a valid
// endpoint here; use fo() when the trailing sentinel matters.
Fingerprint fingerprint_of(const Sequence& s, Pos i, Pos j);

// First occurrences of the distinct characters of s[i..j], in order of first
// appearance. j may be n+1, in which case the output can end with the
// sentinel rank sigma.
std::vector<Rank> fo(const Sequence& s, Pos i, Pos j);

// fo(i, j-1) where j is the next occurrence of s_i after i, or n+2 when s_i
// never reappears (the window then swallows the sentinel).
std::vector<Rank> lfo(const Sequence& s, Pos i);

// Position of the t-th element of lfo(i) in s; lfo_positions(i)[t-1] is the
// first occurrence of that character at or after i.
std::vector<Pos> lfo_positions(const Sequence& s, Pos i);

// Minimal position among the rightmost occurrences inside [i,j] of every
// character of s[i..j].
Pos support_of(const Sequence& s, Pos i, Pos j);

// fo(support_of(i,j), j): the canonical spelling attached to the maximal
// location obtained from [i,j].
std::vector<Rank> o_label(const Sequence& s, Pos i, Pos j);

// Grows [i,j] while the adjacent outside characters stay inside the interval's
// character set. The result is the unique maximal location containing [i,j]
// with the same character set; extend is idempotent.
MaximalLocation extend(const Sequence& s, Pos i, Pos j);

// Maps a normalized location back to raw-input coordinates:
// (run(i).first, run(j).second).
std::pair<std::uint64_t, std::uint64_t> denormalize(const Sequence& s, MaximalLocation loc);

}  // namespace fpindex
