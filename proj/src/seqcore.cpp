#include "fpindex/seqcore.hpp"

namespace fpindex {

std::pair<Sequence, Alphabet> normalize(const std::string& raw) {
    if (raw.empty()) throw EmptyInput();
    Sequence s;
    Alphabet a;
    s.raw_length_ = raw.size();
    std::uint64_t i = 0;
    while (i < raw.size()) {
        std::uint64_t j = i;
        while (j + 1 < raw.size() && raw[j + 1] == raw[i]) ++j;
        s.ranks_.push_back(a.intern(static_cast<unsigned char>(raw[i])));
        s.runs_.emplace_back(i + 1, j + 1);
        i = j + 1;
    }
    s.sigma_ = a.sigma();
    return {std::move(s), std::move(a)};
}

namespace {

void check_interval(const Sequence&, Pos i, Pos j, Pos jmax) {
    if (i < 1 || j < i || j > jmax)
        throw IndexOutOfRange("interval [" + std::to_string(i) + ", " + std::to_string(j) +
                              "] outside [1, " + std::to_string(jmax) + "]");
}

}  // namespace

Fingerprint fingerprint_of(const Sequence& s, Pos i, Pos j) {
    check_interval(s, i, j, s.n());
    Fingerprint f(s.sigma());
    for (Pos p = i; p <= j; ++p) f.add(s.rank_at(p));
    return f;
}

std::vector<Rank> fo(const Sequence& s, Pos i, Pos j) {
    check_interval(s, i, j, s.n() + 1);
    // One extra slot so the sentinel rank can be marked as seen.
    std::vector<char> seen(s.sigma() + 1, 0);
    std::vector<Rank> out;
    for (Pos p = i; p <= j; ++p) {
        Rank r = s.rank_at(p);
        if (!seen[r]) {
            seen[r] = 1;
            out.push_back(r);
        }
    }
    return out;
}

std::vector<Rank> lfo(const Sequence& s, Pos i) {
    check_interval(s, i, i, s.n());
    Rank c = s.rank_at(i);
    Pos j = s.n() + 2;  // window reaches the sentinel when s_i never repeats
    for (Pos p = i + 1; p <= s.n(); ++p)
        if (s.rank_at(p) == c) {
            j = p;
            break;
        }
    return fo(s, i, j - 1);
}

std::vector<Pos> lfo_positions(const Sequence& s, Pos i) {
    check_interval(s, i, i, s.n());
    Rank c = s.rank_at(i);
    Pos j = s.n() + 2;
    for (Pos p = i + 1; p <= s.n(); ++p)
        if (s.rank_at(p) == c) {
            j = p;
            break;
        }
    std::vector<char> seen(s.sigma() + 1, 0);
    std::vector<Pos> out;
    for (Pos p = i; p <= j - 1; ++p) {
        Rank r = s.rank_at(p);
        if (!seen[r]) {
            seen[r] = 1;
            out.push_back(p);
        }
    }
    return out;
}

Pos support_of(const Sequence& s, Pos i, Pos j) {
    check_interval(s, i, j, s.n());
    // Rightmost occurrence of each character, then the minimum of those.
    std::vector<Pos> last(s.sigma(), 0);
    for (Pos p = i; p <= j; ++p) last[s.rank_at(p)] = p;
    Pos m = j;
    for (Pos p : last)
        if (p != 0 && p < m) m = p;
    return m;
}

std::vector<Rank> o_label(const Sequence& s, Pos i, Pos j) {
    return fo(s, support_of(s, i, j), j);
}

MaximalLocation extend(const Sequence& s, Pos i, Pos j) {
    check_interval(s, i, j, s.n());
    Fingerprint f = fingerprint_of(s, i, j);
    for (;;) {
        if (i > 1 && f.contains(s.rank_at(i - 1))) {
            --i;
        } else if (j < s.n() && f.contains(s.rank_at(j + 1))) {
            ++j;
        } else {
            break;
        }
    }
    return {i, j};
}

std::pair<std::uint64_t, std::uint64_t> denormalize(const Sequence& s, MaximalLocation loc) {
    return {s.run(loc.i).first, s.run(loc.j).second};
}

Sequence sequence_from_parts(std::vector<Rank> ranks,
                             std::vector<std::pair<std::uint64_t, std::uint64_t>> runs,
                             std::uint32_t sigma, std::uint64_t raw_length) {
    if (ranks.empty()) throw FormatError("sequence section is empty");
    if (ranks.size() != runs.size()) throw FormatError("rank and run sections disagree in length");
    std::uint64_t cursor = 1;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] >= sigma) throw FormatError("sequence rank outside alphabet");
        if (i > 0 && ranks[i] == ranks[i - 1])
            throw FormatError("sequence is not simple: equal adjacent ranks");
        if (runs[i].first != cursor || runs[i].second < runs[i].first)
            throw FormatError("run intervals do not tile the raw input");
        cursor = runs[i].second + 1;
    }
    if (cursor != raw_length + 1) throw FormatError("run intervals do not cover the raw length");
    Sequence s;
    s.ranks_ = std::move(ranks);
    s.runs_ = std::move(runs);
    s.sigma_ = sigma;
    s.raw_length_ = raw_length;
    return s;
}

}  // namespace fpindex
