#include "fpindex/oracle.hpp"

#include <algorithm>
#include <map>

namespace fpindex {

bool GroundTruth::has_fingerprint(const Fingerprint& f) const {
    for (const auto& g : fingerprints)
        if (g == f) return true;
    return false;
}

std::vector<MaximalLocation> GroundTruth::locations_of(const Fingerprint& f) const {
    std::vector<MaximalLocation> out;
    for (const auto& ol : locations)
        if (ol.fingerprint == f) out.push_back(ol.loc);
    return out;
}

GroundTruth oracle_all(const Sequence& s, Pos cap) {
    const Pos n = s.n();
    if (n > cap)
        throw CapExceeded("oracle asked for n=" + std::to_string(n) + " above cap " +
                          std::to_string(cap));

    GroundTruth gt;

    // A location <i,j> is maximal iff its boundary neighbours fall outside its
    // character set. Grow j for each i, maintaining the set incrementally.
    for (Pos i = 1; i <= n; ++i) {
        Fingerprint f(s.sigma());
        for (Pos j = i; j <= n; ++j) {
            f.add(s.rank_at(j));
            bool left_ok = (i == 1) || !f.contains(s.rank_at(i - 1));
            bool right_ok = (j == n) || !f.contains(s.rank_at(j + 1));
            if (left_ok && right_ok) {
                OracleLocation ol;
                ol.loc = {i, j};
                ol.fingerprint = f;
                ol.support = support_of(s, i, j);
                ol.label = o_label(s, i, j);
                gt.locations.push_back(std::move(ol));
            }
        }
    }
    std::sort(gt.locations.begin(), gt.locations.end(),
              [](const OracleLocation& a, const OracleLocation& b) { return a.loc < b.loc; });

    // Distinct fingerprints, first-seen order.
    std::unordered_map<Fingerprint, std::size_t, Fingerprint::Hash> seen;
    for (const auto& ol : gt.locations)
        if (seen.emplace(ol.fingerprint, gt.fingerprints.size()).second)
            gt.fingerprints.push_back(ol.fingerprint);

    // Copy classes: group by the spelled substring.
    std::map<std::vector<Rank>, std::vector<std::size_t>> by_string;
    for (std::size_t idx = 0; idx < gt.locations.size(); ++idx) {
        const auto& ol = gt.locations[idx];
        std::vector<Rank> word;
        word.reserve(ol.loc.j - ol.loc.i + 1);
        for (Pos p = ol.loc.i; p <= ol.loc.j; ++p) word.push_back(s.rank_at(p));
        by_string[std::move(word)].push_back(idx);
    }
    gt.classes.reserve(by_string.size());
    for (auto& [word, members] : by_string) gt.classes.push_back(std::move(members));

    return gt;
}

std::string gen_wk(unsigned k) {
    if (k < 1 || k > 26) throw KOutOfRange("k=" + std::to_string(k) + " outside [1, 26]");
    std::string w = "a";
    for (unsigned t = 2; t <= k; ++t) {
        std::string block;
        for (unsigned c = 0; c < t; ++c) block.push_back(static_cast<char>('a' + c));
        for (unsigned rep = 0; rep < t; ++rep) w += block;
    }
    return w;
}

}  // namespace fpindex
