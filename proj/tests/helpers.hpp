#pragma once

#include <random>
#include <string>
#include <vector>

#include "fpindex/seqcore.hpp"

namespace fpindex::testing {

// Renders a rank string through the alphabet; the sentinel prints as '#'.
inline std::string spell(const Alphabet& a, const std::vector<Rank>& ranks) {
    std::string out;
    for (Rank r : ranks)
        out.push_back(r == a.sigma() ? '#' : static_cast<char>(a.unrank(r)));
    return out;
}

inline std::string spell(const Alphabet& a, const Fingerprint& f) {
    return spell(a, f.ranks());
}

// Random simple-ish text: repeats are allowed (normalize collapses them).
inline std::string random_text(std::mt19937_64& rng, std::size_t len, unsigned sigma) {
    std::uniform_int_distribution<unsigned> pick(0, sigma - 1);
    std::string out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        out.push_back(static_cast<char>('a' + pick(rng)));
    return out;
}

}  // namespace fpindex::testing
