#include "fpindex/naming.hpp"

#include <algorithm>

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {

std::uint64_t pack(Name a, Name b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Stable counting sort of index array `idx` by key(i).
template <typename Key>
void counting_pass(std::vector<std::uint32_t>& idx, Key key) {
    Name max_key = 0;
    for (auto i : idx) max_key = std::max(max_key, key(i));
    std::vector<std::uint32_t> count(static_cast<std::size_t>(max_key) + 2, 0);
    for (auto i : idx) ++count[key(i) + 1];
    for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
    std::vector<std::uint32_t> out(idx.size());
    for (auto i : idx) out[count[key(i)]++] = i;
    idx.swap(out);
}

}  // namespace

RadixResult radix_sort_pairs(const std::vector<std::pair<Name, Name>>& pairs) {
    RadixResult res;
    if (pairs.empty()) return res;
    std::vector<std::uint32_t> idx(pairs.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    counting_pass(idx, [&](std::uint32_t i) { return pairs[i].second; });
    counting_pass(idx, [&](std::uint32_t i) { return pairs[i].first; });

    res.sorted.reserve(pairs.size());
    res.names.assign(pairs.size(), 0);
    Name dense = 0;
    for (std::size_t t = 0; t < idx.size(); ++t) {
        const auto& p = pairs[idx[t]];
        if (t > 0 && p != res.sorted.back()) ++dense;
        res.sorted.push_back(p);
        res.names[idx[t]] = dense;
    }
    res.distinct = dense + 1;
    return res;
}

ListNamer::ListNamer(Rank sigma) : sigma_(sigma) {
    if (sigma == 0) throw RankOutOfRange("alphabet must not be empty");
    while (padded_ < sigma_) {
        padded_ *= 2;
        ++levels_;
    }
    dict_.resize(levels_);
    table_.resize(levels_);
    ninit_.resize(levels_ + 1);
    ninit_[0] = 0;
    for (unsigned r = 0; r < levels_; ++r) {
        table_[r].assign(padded_ >> r, ninit_[r]);
        ninit_[r + 1] = intern(r, ninit_[r], ninit_[r]);
    }
    empty_ = ninit_[levels_];
}

Name ListNamer::intern(unsigned level, Name a, Name b) {
    auto [it, fresh] = dict_[level].try_emplace(pack(a, b), next_);
    if (fresh) ++next_;
    return it->second;
}

std::vector<Name> ListNamer::name_list(const std::vector<Rank>& changes,
                                       NameListTrace* trace) {
    std::vector<bool> seen(sigma_, false);
    for (Rank r : changes) {
        if (r >= sigma_)
            throw RankOutOfRange("change rank " + std::to_string(r) +
                                 " outside alphabet of size " +
                                 std::to_string(sigma_));
        if (seen[r])
            throw DuplicateChange("rank " + std::to_string(r) +
                                  " listed twice");
        seen[r] = true;
    }
    if (trace) trace->levels.clear();

    struct Change {
        Name a;
        Pos j;
    };
    std::vector<Change> cur(changes.size());
    for (std::size_t i = 0; i < changes.size(); ++i) {
        cur[i] = {Name{1}, static_cast<Pos>(changes[i])};
    }
    if (trace) {
        std::vector<Name> bottom(padded_, 0);
        for (const auto& c : cur) bottom[c.j] = c.a;
        trace->levels.push_back(std::move(bottom));
    }

    for (unsigned r = 0; r < levels_; ++r) {
        auto& ft = table_[r];
        std::vector<std::pair<Name, Name>> pairs;
        std::vector<Pos> cells;
        pairs.reserve(cur.size());
        cells.reserve(cur.size());
        for (const auto& c : cur) {
            ft[c.j] = c.a;
            Pos up = c.j / 2;
            pairs.emplace_back(ft[2 * up], ft[2 * up + 1]);
            cells.push_back(up);
        }
        auto radix = radix_sort_pairs(pairs);
        // Intern in sorted order so fresh names are dense and deterministic.
        std::vector<Name> dense_to_name(radix.distinct);
        {
            Name d = 0;
            for (std::size_t t = 0; t < radix.sorted.size(); ++t) {
                if (t > 0 && radix.sorted[t] == radix.sorted[t - 1]) continue;
                dense_to_name[d] =
                    intern(r, radix.sorted[t].first, radix.sorted[t].second);
                ++d;
            }
        }
        std::vector<Change> up(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            up[i] = {dense_to_name[radix.names[i]], cells[i]};
        }
        if (trace) {
            std::vector<Name> level(ft.size() / 2, ninit_[r + 1]);
            for (const auto& c : up) level[c.j] = c.a;
            trace->levels.push_back(std::move(level));
        }
        // Rewind the working table for the next call.
        for (const auto& c : cur) ft[c.j] = ninit_[r];
        cur = std::move(up);
    }

    std::vector<Name> out(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) out[i] = cur[i].a;
    return out;
}

FingerprintNaming name_fingerprints(const ParticipationTree& pt, Rank sigma) {
    using NodeId = ParticipationTree::NodeId;
    if (sigma == 0) throw RankOutOfRange("alphabet must not be empty");
    Rank padded = 1;
    unsigned levels = 0;
    while (padded < sigma) {
        padded *= 2;
        ++levels;
    }

    const NodeId n = pt.node_count();
    // Per-edge annotation {a, j}: the pending change for the current level.
    std::vector<Name> an(n, 1);
    std::vector<Pos> aj(n, 0);
    for (NodeId v = 1; v < n; ++v) aj[v] = pt.edge_char(v);

    FingerprintNaming out;
    Name ninit = 0;
    out.level_new_names.reserve(levels);

    std::vector<Name> pa(n, 0), pb(n, 0);
    for (unsigned k = 0; k < levels; ++k) {
        std::vector<Name> ft(padded >> k, ninit);

        // Depth-first sweep: apply each edge's change on entry, record the
        // affected pair, undo the change on exit.
        struct Frame {
            NodeId node;
            std::size_t next_child = 0;
            Pos j = 0;
            Name prec = 0;
            bool restore = false;
        };
        std::vector<Frame> stack;
        stack.push_back({ParticipationTree::kRoot});
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& kids = pt.children(f.node);
            if (f.next_child < kids.size()) {
                NodeId q = kids[f.next_child++].second;
                Pos j = aj[q];
                Frame g{q};
                g.j = j;
                g.prec = ft[j];
                g.restore = true;
                ft[j] = an[q];
                Pos up = j / 2;
                pa[q] = ft[2 * up];
                pb[q] = ft[2 * up + 1];
                aj[q] = up;
                stack.push_back(g);
            } else {
                if (f.restore) ft[f.j] = f.prec;
                stack.pop_back();
            }
        }
        for (Name cell : ft) {
            if (cell != ninit)
                throw Error("naming table not rewound after traversal");
        }

        std::vector<std::pair<Name, Name>> pairs;
        pairs.reserve(n);
        for (NodeId v = 1; v < n; ++v) pairs.emplace_back(pa[v], pb[v]);
        pairs.emplace_back(ninit, ninit);
        auto radix = radix_sort_pairs(pairs);
        out.level_new_names.push_back(radix.distinct);
        // Dense per-level names start at 2, above the two bit names.
        for (NodeId v = 1; v < n; ++v) an[v] = 2 + radix.names[v - 1];
        ninit = 2 + radix.names[n - 1];
    }

    out.node_names.assign(n, 0);
    out.empty_name = ninit;
    out.node_names[ParticipationTree::kRoot] = ninit;
    for (NodeId v = 1; v < n; ++v) out.node_names[v] = an[v];
    return out;
}

}  // namespace fpindex
