#include "fpindex/set_equality.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {

// Two-phase comparison over a word-packed bit table. `key` projects a rank to
// its bit index; callers guarantee that within these inputs equal keys imply
// equal ranks, so the membership re-scan on the mismatch path can compare full
// ranks. The table must be clean on entry and is left clean on every exit
// path, including throws.
template <class KeyFn>
bool bit_compare(const std::vector<Rank>& a, const std::vector<Rank>& b, KeyFn key,
                 std::vector<std::uint64_t>& bits) {
    auto test = [&](Rank k) { return (bits[k >> 6] >> (k & 63)) & 1u; };
    auto set = [&](Rank k) { bits[k >> 6] |= std::uint64_t{1} << (k & 63); };
    auto clear = [&](Rank k) { bits[k >> 6] &= ~(std::uint64_t{1} << (k & 63)); };
    auto clear_all_of_a = [&] {
        for (Rank c : a) clear(key(c));
    };

    for (std::size_t i = 0; i < a.size(); ++i) {
        Rank k = key(a[i]);
        if (test(k)) {
            for (std::size_t j = 0; j < i; ++j) clear(key(a[j]));
            throw DuplicateCharacter("first string repeats a character");
        }
        set(k);
    }
    for (Rank c : b) {
        Rank k = key(c);
        if (test(k)) {
            clear(k);
            continue;
        }
        // The bit is zero either because c never occurred in the first string
        // (the sets differ) or because an earlier copy of c in the second
        // string already consumed it (a repeated character).
        bool member = std::find(a.begin(), a.end(), c) != a.end();
        clear_all_of_a();
        if (member) throw DuplicateCharacter("second string repeats a character");
        return false;
    }
    // Equal lengths and |a| distinct marks each consumed exactly once: the
    // table is already clean and the sets are equal.
    return true;
}

void check_lengths(const std::vector<Rank>& s1, const std::vector<Rank>& s2) {
    if (s1.size() != s2.size()) throw LengthMismatch(s1.size(), s2.size());
}

void check_ranks(const std::vector<Rank>& s, Rank sigma) {
    for (Rank c : s) {
        if (c >= sigma) {
            throw RankOutOfRange("set equality: rank " + std::to_string(c) +
                                 " outside alphabet of size " + std::to_string(sigma));
        }
    }
}

}  // namespace

EqualityScratch::EqualityScratch(Rank sigma)
    : sigma_(sigma), bits_((static_cast<std::size_t>(sigma) + 63) / 64 + 1, 0) {}

bool EqualityScratch::clean() const {
    for (std::uint64_t w : bits_) {
        if (w != 0) return false;
    }
    for (const Level& level : levels_) {
        if (!level.used1.empty() || !level.used2.empty()) return false;
        for (const auto& cell : level.cells1) {
            if (!cell.empty()) return false;
        }
        for (const auto& cell : level.cells2) {
            if (!cell.empty()) return false;
        }
    }
    return true;
}

void EqualityScratch::configure(unsigned k) {
    if (k_ == k) return;
    // Split the bits of a rank into k slices, most significant first, each
    // ceil(remaining / remaining-slices) wide so the widths are as even as
    // possible and the leading slice is the widest.
    total_bits_ = sigma_ > 1 ? std::bit_width(sigma_ - 1) : 0;
    width_.assign(k, 0);
    shift_.assign(k, 0);
    unsigned remaining = total_bits_;
    for (unsigned i = 0; i < k; ++i) {
        width_[i] = (remaining + (k - i) - 1) / (k - i);
        remaining -= width_[i];
        shift_[i] = remaining;
    }
    levels_.assign(k - 1, Level{});
    for (unsigned i = 0; i + 1 < k; ++i) {
        std::size_t cells = std::size_t{1} << width_[i];
        levels_[i].cells1.assign(cells, {});
        levels_[i].cells2.assign(cells, {});
    }
    k_ = k;
}

bool eq_bits(const std::vector<Rank>& s1, const std::vector<Rank>& s2, EqualityScratch& scratch) {
    check_lengths(s1, s2);
    check_ranks(s1, scratch.sigma_);
    check_ranks(s2, scratch.sigma_);
    return bit_compare(s1, s2, [](Rank c) { return c; }, scratch.bits_);
}

bool eq_hash(const std::vector<Rank>& s1, const std::vector<Rank>& s2) {
    check_lengths(s1, s2);
    std::unordered_map<Rank, bool> matched;
    matched.reserve(s1.size() * 2);
    for (Rank c : s1) {
        if (!matched.emplace(c, false).second) {
            throw DuplicateCharacter("first string repeats a character");
        }
    }
    for (Rank c : s2) {
        auto it = matched.find(c);
        if (it == matched.end()) return false;
        if (it->second) throw DuplicateCharacter("second string repeats a character");
        it->second = true;
    }
    return true;
}

bool EqualityScratch::descend(unsigned depth, unsigned k, const std::vector<Rank>& run1,
                              const std::vector<Rank>& run2) {
    if (depth + 1 == k) {
        // Last slice: within these runs all higher slices agree, so ranks are
        // equal iff their low slices are.
        Rank mask = static_cast<Rank>((std::uint64_t{1} << width_[depth]) - 1);
        return bit_compare(run1, run2, [mask](Rank c) { return c & mask; }, bits_);
    }
    return partition_round(depth, k, run1, run2);
}

// Distributes both runs into the cells of this level by the current slice,
// pairs cells up, and either recurses or reports a run-length mismatch as
// inequality. Cleans exactly the touched cells on every exit path.
bool EqualityScratch::partition_round(unsigned depth, unsigned k, const std::vector<Rank>& run1,
                                      const std::vector<Rank>& run2) {
    Level& level = levels_[depth];
    unsigned shift = shift_[depth];
    Rank mask = static_cast<Rank>((std::uint64_t{1} << width_[depth]) - 1);
    auto slice = [shift, mask](Rank c) { return (c >> shift) & mask; };

    for (Rank c : run1) {
        Rank j = slice(c);
        if (level.cells1[j].empty()) level.used1.push_back(j);
        level.cells1[j].push_back(c);
    }
    for (Rank c : run2) {
        Rank j = slice(c);
        if (level.cells2[j].empty()) level.used2.push_back(j);
        level.cells2[j].push_back(c);
    }

    auto cleanup = [&] {
        for (std::uint32_t j : level.used1) level.cells1[j].clear();
        for (std::uint32_t j : level.used2) level.cells2[j].clear();
        level.used1.clear();
        level.used2.clear();
    };

    // Paired cells must hold runs of equal length; a mismatch means the sets
    // differ. Equal lengths everywhere also force every rank of run2 into a
    // cell that run1 occupies, because the totals on both sides match.
    bool equal = true;
    try {
        for (std::uint32_t j : level.used1) {
            if (level.cells1[j].size() != level.cells2[j].size()) {
                equal = false;
                break;
            }
            if (!descend(depth + 1, k, level.cells1[j], level.cells2[j])) {
                equal = false;
                break;
            }
        }
    } catch (...) {
        cleanup();
        throw;
    }
    cleanup();
    return equal;
}

bool eq_partitioned(const std::vector<Rank>& s1, const std::vector<Rank>& s2, unsigned k,
                    EqualityScratch& scratch) {
    if (k < 2 || k > 64) {
        throw KOutOfRange("eq_partitioned: partition depth " + std::to_string(k) +
                          " outside [2,64]");
    }
    check_lengths(s1, s2);
    check_ranks(s1, scratch.sigma_);
    check_ranks(s2, scratch.sigma_);
    scratch.configure(k);
    return scratch.partition_round(0, k, s1, s2);
}

}  // namespace fpindex
