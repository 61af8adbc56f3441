#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fpindex/seqcore.hpp"

namespace fpindex {

// Brute-force ground truth computed directly from the definitions, used to
// validate every fast structure in the library. Deliberately shares nothing
// with the suffix-tree / naming pipeline beyond the seqcore primitives.

struct OracleLocation {
    MaximalLocation loc;
    Fingerprint fingerprint;
    Pos support = 0;
    std::vector<Rank> label;  // o_label of the location
};

struct GroundTruth {
    std::vector<OracleLocation> locations;        // all maximal locations, sorted by <i,j>
    std::vector<Fingerprint> fingerprints;        // distinct fingerprints (set F)
    std::vector<std::vector<std::size_t>> classes;  // copy classes as indices into locations

    std::size_t location_count() const { return locations.size(); }
    std::size_t fingerprint_count() const { return fingerprints.size(); }
    std::size_t class_count() const { return classes.size(); }

    bool has_fingerprint(const Fingerprint& f) const;
    // All locations whose fingerprint equals f, sorted by <i,j>.
    std::vector<MaximalLocation> locations_of(const Fingerprint& f) const;
};

inline constexpr Pos kOracleDefaultCap = 500;

// Enumerates every maximal location by scanning all O(n^2) intervals and
// checking the defining conditions, then groups them into the fingerprint
// family and copy classes. Throws CapExceeded when n > cap.
GroundTruth oracle_all(const Sequence& s, Pos cap = kOracleDefaultCap);

// Scaling family: w_1 = "a", w_k = w_{k-1} (a_1 ... a_k)^k over the first k
// letters of the alphabet. |w_k| = k(k+1)(2k+1)/6. 1 <= k <= 26.
std::string gen_wk(unsigned k);

}  // namespace fpindex
