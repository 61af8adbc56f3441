#include "fpindex/online_builders.hpp"

#include <algorithm>
#include <string>

#include "fpindex/errors.hpp"
#include "fpindex/participation_tree.hpp"
#include "fpindex/polyhash.hpp"

namespace fpindex {

void enumerate_change_lists(const Sequence& s,
                            const std::function<void(const ChangeList&)>& visit) {
    const Pos n = s.n();
    if (n == 0) return;

    EfoList efo(s);
    ChangeList cl;
    // entered[r] == m while rank r belongs to the prefix set being grown at
    // support m; stamping avoids clearing between supports.
    std::vector<Pos> entered(s.sigma(), 0);

    for (Pos m = n;; --m) {
        if (m != n) efo.step();

        cl.support = m;
        cl.chars.clear();
        cl.first_pos.clear();
        cl.locations.clear();
        cl.sentinel_terminated = efo.next_occurrence() == n + 2;

        // The window of first occurrences runs from the front of the list
        // (position m itself) through tp, the last position before the next
        // occurrence of s_m. The sentinel cell is the window's end marker,
        // never a change.
        for (Pos cell = efo.front();; cell = efo.next(cell)) {
            if (cell == n + 1) break;
            cl.chars.push_back(s.rank_at(cell));
            cl.first_pos.push_back(cell);
            if (cell == efo.tp()) break;
        }

        // Prefix t of the stream is a fingerprint whose unique maximal
        // location has support m: it ends just before the first position
        // that brings a character outside the prefix, and starts as far left
        // as the prefix set allows. The left edge only moves further left as
        // the set grows, so one cursor serves the whole list.
        std::size_t count =
            cl.sentinel_terminated ? cl.chars.size()
                                   : (cl.chars.empty() ? 0 : cl.chars.size() - 1);
        Pos left = m;
        for (std::size_t t = 0; t < count; ++t) {
            entered[cl.chars[t]] = m;
            while (left > 1 && entered[s.rank_at(left - 1)] == m) --left;
            Pos right = t + 1 < cl.chars.size() ? cl.first_pos[t + 1] - 1 : n;
            cl.locations.push_back({left, right});
        }

        visit(cl);
        if (m == 1) break;
    }
}

std::vector<ChangeList> all_change_lists(const Sequence& s) {
    std::vector<ChangeList> out;
    out.reserve(s.n());
    enumerate_change_lists(s, [&](const ChangeList& cl) { out.push_back(cl); });
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

template <class NameT, class MapT>
void record(MapT& names, NameT name, const MaximalLocation& loc, bool collect,
            std::size_t& change_count) {
    ++change_count;
    auto [it, fresh] = names.try_emplace(name);
    if (fresh || collect) it->second.push_back(loc);
}

}  // namespace

NameBuildResult build_names_randomized(const Sequence& s, ListNamer& namer,
                                       bool collect_locations) {
    NameBuildResult out;
    std::vector<Rank> head;
    enumerate_change_lists(s, [&](const ChangeList& cl) {
        std::size_t count = cl.location_count();
        if (count == 0) return;
        head.assign(cl.chars.begin(), cl.chars.begin() + count);
        std::vector<Name> prefix_names = namer.name_list(head);
        for (std::size_t t = 0; t < count; ++t) {
            record(out.names, prefix_names[t], cl.locations[t], collect_locations,
                   out.change_count);
        }
    });
    return out;
}

NameBuildResult build_names_randomized(const Sequence& s, bool collect_locations) {
    ListNamer namer(s.sigma());
    return build_names_randomized(s, namer, collect_locations);
}

McBuildResult build_mc(const Sequence& s, unsigned c, std::mt19937_64& rng,
                       bool collect_locations) {
    if (c < 1) throw KOutOfRange("confidence exponent must be at least 1");

    // Prime bound n^(c+2) * sigma^3; overflow past the 2^61 working limit is
    // an error, not a silent cap.
    constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 61;
    unsigned __int128 bound = 1;
    // bound stays clamped to kLimit, so each product fits in 128 bits.
    auto grow = [&](std::uint64_t factor) {
        bound *= factor;
        if (bound > kLimit) bound = kLimit;
    };
    std::uint64_t n = s.n(), sigma = s.sigma();
    for (unsigned i = 0; i < c + 2; ++i) grow(n);
    for (unsigned i = 0; i < 3; ++i) grow(sigma);
    if (bound >= kLimit) {
        throw ModulusTooLarge("required prime bound n^(c+2)*sigma^3 reaches 2^61 for n=" +
                              std::to_string(n) + ", sigma=" + std::to_string(sigma) +
                              ", c=" + std::to_string(c));
    }

    McBuildResult out;
    std::uint64_t b = static_cast<std::uint64_t>(bound);
    out.prime = find_prime(b + 1, 2 * b, rng);
    out.point = std::uniform_int_distribution<std::uint64_t>(0, out.prime - 1)(rng);

    // One modular power per alphabet symbol, then one addition per change.
    std::vector<std::uint64_t> power_of(s.sigma(), 1);
    for (Rank r = 0; r < s.sigma(); ++r) power_of[r] = pow_mod(out.point, r, out.prime);

    enumerate_change_lists(s, [&](const ChangeList& cl) {
        std::uint64_t h = 0;
        for (std::size_t t = 0; t < cl.location_count(); ++t) {
            h += power_of[cl.chars[t]];
            if (h >= out.prime) h -= out.prime;
            record(out.names, h, cl.locations[t], collect_locations, out.change_count);
        }
    });
    return out;
}

}  // namespace fpindex
