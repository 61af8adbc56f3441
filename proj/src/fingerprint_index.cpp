#include "fpindex/fingerprint_index.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>

#include "fpindex/naming.hpp"
#include "fpindex/online_builders.hpp"
#include "fpindex/participation_tree.hpp"
#include "fpindex/suffix_tree.hpp"

namespace fpindex {

namespace {

std::uint64_t edge_key(FingerprintTrie::NodeId parent, Rank label) {
    return (static_cast<std::uint64_t>(parent) << 32) | label;
}

}  // namespace

// ---------------------------------------------------------------------------
// FingerprintTrie

FingerprintTrie::NodeId FingerprintTrie::attach(NodeId parent, Rank label) {
    NodeId id = node_count();
    nodes_.push_back({parent, label, nodes_[parent].depth + 1});
    children_.emplace(edge_key(parent, label), id);
    return id;
}

FingerprintTrie FingerprintTrie::from_words(const std::vector<std::vector<Rank>>& words,
                                            std::uint32_t sigma,
                                            std::vector<NodeId>* node_of_word) {
    FingerprintTrie trie;
    trie.sigma_ = sigma;
    if (node_of_word) node_of_word->assign(words.size(), kNoNode);

    std::vector<std::size_t> order(words.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return words[a].size() < words[b].size();
    });

    // Set -> node, keyed by sorted ranks.
    std::map<std::vector<Rank>, NodeId> node_of;
    node_of.emplace(std::vector<Rank>{}, kRoot);

    std::vector<Rank> key;
    for (std::size_t idx : order) {
        const std::vector<Rank>& w = words[idx];
        if (w.empty()) throw DuplicateSets("empty set spelled twice (root already present)");
        key.assign(w.begin(), w.end());
        std::sort(key.begin(), key.end());
        for (std::size_t t = 0; t < key.size(); ++t) {
            if (key[t] >= sigma)
                throw RankOutOfRange("spelling rank " + std::to_string(key[t]) +
                                     " >= sigma " + std::to_string(sigma));
            if (t > 0 && key[t] == key[t - 1])
                throw DuplicateCharacter("spelling repeats rank " + std::to_string(key[t]));
        }
        if (node_of.count(key)) throw DuplicateSets("two spellings share a character set");

        Rank last = w.back();
        std::vector<Rank> parent_key;
        parent_key.reserve(key.size() - 1);
        for (Rank r : key)
            if (r != last) parent_key.push_back(r);
        auto it = node_of.find(parent_key);
        if (it == node_of.end())
            throw NotPrefixClosed("no set is spelled for a prefix of a stored spelling");
        NodeId id = trie.attach(it->second, last);
        node_of.emplace(key, id);
        if (node_of_word) (*node_of_word)[idx] = id;
    }
    return trie;
}

FingerprintTrie FingerprintTrie::from_arrays(std::vector<NodeId> parents,
                                             std::vector<Rank> labels, std::uint32_t sigma) {
    if (parents.size() != labels.size() || parents.empty())
        throw FormatError("trie arrays are empty or of unequal length");
    if (parents[0] != kRoot)
        throw FormatError("trie root must be its own parent");

    FingerprintTrie trie;
    trie.sigma_ = sigma;
    trie.nodes_.resize(parents.size());
    trie.nodes_[kRoot] = Node{};

    // Per-node set, as sigma-bit rows, to reject repeated or duplicate sets.
    const std::size_t row = (sigma + 63) / 64;
    std::vector<std::uint64_t> sets(parents.size() * row, 0);
    for (NodeId v = 1; v < trie.nodes_.size(); ++v) {
        NodeId p = parents[v];
        Rank c = labels[v];
        if (p >= v) throw FormatError("trie parent id does not precede its child");
        if (c >= sigma) throw FormatError("trie edge label outside the alphabet");
        if (!trie.children_.emplace(edge_key(p, c), v).second)
            throw FormatError("trie repeats an edge");
        std::copy_n(sets.begin() + p * row, row, sets.begin() + v * row);
        std::uint64_t& word = sets[v * row + c / 64];
        if (word & (1ull << (c % 64)))
            throw FormatError("trie root path repeats a character");
        word |= 1ull << (c % 64);
        trie.nodes_[v] = {p, c, trie.nodes_[p].depth + 1};
    }

    std::vector<std::span<const std::uint64_t>> rows;
    rows.reserve(trie.nodes_.size());
    for (NodeId v = 0; v < trie.nodes_.size(); ++v)
        rows.push_back({sets.data() + v * row, row});
    std::sort(rows.begin(), rows.end(), [](auto a, auto b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    for (std::size_t t = 1; t < rows.size(); ++t)
        if (std::equal(rows[t].begin(), rows[t].end(), rows[t - 1].begin()))
            throw FormatError("trie stores one character set twice");
    return trie;
}

FingerprintTrie::NodeId FingerprintTrie::child(NodeId v, Rank r) const {
    auto it = children_.find(edge_key(v, r));
    return it == children_.end() ? kNoNode : it->second;
}

std::vector<Rank> FingerprintTrie::word_of(NodeId v) const {
    std::vector<Rank> w;
    w.reserve(depth(v));
    for (NodeId u = v; u != kRoot; u = parent(u)) w.push_back(label(u));
    std::reverse(w.begin(), w.end());
    return w;
}

FingerprintTrie::NodeId FingerprintTrie::walk(std::span<const Rank> word) const {
    NodeId at = kRoot;
    for (Rank r : word) {
        at = child(at, r);
        if (at == kNoNode) return kNoNode;
    }
    return at;
}

// ---------------------------------------------------------------------------
// BacktrackFunction

void BacktrackFunction::insert(std::uint64_t h, Rank r) {
    std::uint64_t at = h & mask_;
    while (keys_[at] != kEmpty) {
        if (keys_[at] == h) throw FormatError("two associations share a hash value");
        at = (at + 1) & mask_;
    }
    keys_[at] = h;
    vals_[at] = r;
    ++size_;
}

Rank BacktrackFunction::lookup(std::uint64_t h) const {
    std::uint64_t at = h & mask_;
    while (keys_[at] != kEmpty) {
        if (keys_[at] == h) return vals_[at];
        at = (at + 1) & mask_;
    }
    return 0;  // unknown hash: any in-range rank will do
}

std::uint64_t BacktrackFunction::hash_of(std::span<const Rank> distinct_ranks) const {
    return params_.hash_set(distinct_ranks);
}

std::uint64_t BacktrackFunction::peel(std::uint64_t h, Rank r) const {
    std::uint64_t p = params_.power(r);
    return (h + params_.P() - p) % params_.P();
}

std::vector<std::pair<std::uint64_t, Rank>> BacktrackFunction::associations() const {
    std::vector<std::pair<std::uint64_t, Rank>> out;
    out.reserve(size_);
    for (std::size_t t = 0; t < keys_.size(); ++t)
        if (keys_[t] != kEmpty) out.emplace_back(keys_[t], vals_[t]);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::size_t table_capacity(std::size_t entries) {
    return std::bit_ceil(std::max<std::size_t>(4, 2 * entries));
}

}  // namespace

BacktrackFunction BacktrackFunction::build(const FingerprintTrie& trie, std::mt19937_64& rng) {
    const FingerprintTrie::NodeId count = trie.node_count();
    std::vector<Fingerprint> sets;
    sets.reserve(count - 1);
    {
        std::vector<Fingerprint> per_node(count, Fingerprint(trie.sigma()));
        for (FingerprintTrie::NodeId v = 1; v < count; ++v) {
            per_node[v] = per_node[trie.parent(v)];
            per_node[v].add(trie.label(v));
            sets.push_back(per_node[v]);
        }
    }
    InjectiveHash found = find_injective(sets, trie.sigma(), rng);

    BacktrackFunction bt;
    bt.params_ = found.params;
    bt.keys_.assign(table_capacity(count - 1), kEmpty);
    bt.vals_.assign(bt.keys_.size(), 0);
    bt.mask_ = bt.keys_.size() - 1;

    // One modular addition per edge, top-down.
    std::vector<std::uint64_t> hash_of_node(count, 0);
    for (FingerprintTrie::NodeId v = 1; v < count; ++v) {
        std::uint64_t h = hash_of_node[trie.parent(v)] + bt.params_.power(trie.label(v));
        if (h >= bt.params_.P()) h -= bt.params_.P();
        hash_of_node[v] = h;
        bt.insert(h, trie.label(v));
    }
    return bt;
}

BacktrackFunction BacktrackFunction::from_pairs(
    const HashParams& params, const std::vector<std::pair<std::uint64_t, Rank>>& pairs) {
    BacktrackFunction bt;
    bt.params_ = params;
    bt.keys_.assign(table_capacity(pairs.size()), kEmpty);
    bt.vals_.assign(bt.keys_.size(), 0);
    bt.mask_ = bt.keys_.size() - 1;
    for (auto [h, r] : pairs) {
        if (h >= params.P()) throw FormatError("association hash not reduced by the modulus");
        if (r >= params.sigma()) throw FormatError("association rank outside the alphabet");
        bt.insert(h, r);
    }
    return bt;
}

// ---------------------------------------------------------------------------
// FingerprintIndex

namespace {

struct Spelling {
    std::vector<Rank> word;
    // Payload index into the per-mode storage (name group or location list).
    std::size_t payload;
};

// Deterministic insertion order for from_words; payloads follow the words.
void sort_spellings(std::vector<Spelling>& spellings) {
    std::sort(spellings.begin(), spellings.end(), [](const Spelling& a, const Spelling& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
}

// Node id per spelling, aligned with the spellings vector.
FingerprintTrie trie_of(const std::vector<Spelling>& spellings, std::uint32_t sigma,
                        std::vector<FingerprintTrie::NodeId>& nodes) {
    std::vector<std::vector<Rank>> words;
    words.reserve(spellings.size());
    for (const Spelling& sp : spellings) words.push_back(sp.word);
    return FingerprintTrie::from_words(words, sigma, &nodes);
}

}  // namespace

FingerprintIndex FingerprintIndex::build(const Sequence& s, const Alphabet& a, BuildMode mode,
                                         std::mt19937_64& rng, std::uint32_t mc_confidence,
                                         bool mc_locations) {
    FingerprintIndex idx;
    idx.seq_ = s;
    idx.alpha_ = a;

    std::vector<Spelling> spellings;

    if (mode == BuildMode::Exact) {
        idx.kind_ = ReportKind::TreePaths;
        SuffixTree st(s);
        ParticipationTree pt(s, st);
        FingerprintNaming naming = name_fingerprints(pt, s.sigma());

        // Nodes sharing a name carry the same set; the first one spells it.
        std::map<Name, std::vector<ParticipationTree::NodeId>> groups;
        for (ParticipationTree::NodeId v = 1; v < pt.node_count(); ++v)
            groups[naming.node_names[v]].push_back(v);

        std::vector<std::vector<PathEntry>> group_entries;
        group_entries.reserve(groups.size());
        for (const auto& [name, nodes] : groups) {
            std::vector<PathEntry> entries;
            std::vector<MaximalLocation> order;
            for (ParticipationTree::NodeId v : nodes) {
                const Pos offset = pt.rel(v);
                for (Pos m : pt.subtree_attachments(v)) {
                    MaximalLocation loc = extend(s, m, m + offset);
                    if (support_of(s, loc.i, loc.j) == m) {
                        entries.push_back({offset, m});
                        order.push_back(loc);
                    }
                }
            }
            std::vector<std::size_t> by_loc(entries.size());
            std::iota(by_loc.begin(), by_loc.end(), 0);
            std::sort(by_loc.begin(), by_loc.end(),
                      [&](std::size_t x, std::size_t y) { return order[x] < order[y]; });
            std::vector<PathEntry> sorted;
            sorted.reserve(entries.size());
            for (std::size_t t : by_loc) sorted.push_back(entries[t]);
            spellings.push_back({pt.path_word(nodes.front()), group_entries.size()});
            group_entries.push_back(std::move(sorted));
        }

        sort_spellings(spellings);
        std::vector<FingerprintTrie::NodeId> nodes;
        idx.trie_ = trie_of(spellings, s.sigma(), nodes);
        idx.tree_entries_.resize(idx.trie_.node_count());
        for (std::size_t t = 0; t < spellings.size(); ++t)
            idx.tree_entries_[nodes[t]] = std::move(group_entries[spellings[t].payload]);
    } else {
        std::vector<std::vector<MaximalLocation>> lists;
        if (mode == BuildMode::Randomized) {
            idx.kind_ = ReportKind::LocationLists;
            NameBuildResult r = build_names_randomized(s, /*collect_locations=*/true);
            std::vector<std::pair<Name, const std::vector<MaximalLocation>*>> by_name;
            by_name.reserve(r.names.size());
            for (const auto& [name, locs] : r.names) by_name.emplace_back(name, &locs);
            std::sort(by_name.begin(), by_name.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            for (const auto& [name, locs] : by_name) {
                spellings.push_back({o_label(s, locs->front().i, locs->front().j), lists.size()});
                lists.push_back(*locs);
            }
        } else {
            idx.kind_ = mc_locations ? ReportKind::LocationLists : ReportKind::NamesOnly;
            McBuildResult r = build_mc(s, mc_confidence, rng, /*collect_locations=*/mc_locations);
            std::vector<std::pair<std::uint64_t, const std::vector<MaximalLocation>*>> by_name;
            by_name.reserve(r.names.size());
            for (const auto& [name, locs] : r.names) by_name.emplace_back(name, &locs);
            std::sort(by_name.begin(), by_name.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            for (const auto& [name, locs] : by_name) {
                spellings.push_back({o_label(s, locs->front().i, locs->front().j), lists.size()});
                lists.push_back(*locs);
            }
        }

        sort_spellings(spellings);
        std::vector<FingerprintTrie::NodeId> nodes;
        idx.trie_ = trie_of(spellings, s.sigma(), nodes);
        if (idx.kind_ == ReportKind::LocationLists) {
            idx.location_lists_.resize(idx.trie_.node_count());
            for (std::size_t t = 0; t < spellings.size(); ++t) {
                std::vector<MaximalLocation>& list = lists[spellings[t].payload];
                std::sort(list.begin(), list.end());
                idx.location_lists_[nodes[t]] = std::move(list);
            }
        }
    }

    idx.backtrack_ = BacktrackFunction::build(idx.trie_, rng);
    return idx;
}

FingerprintIndex FingerprintIndex::from_parts(
    Sequence s, Alphabet a, ReportKind kind, FingerprintTrie trie, BacktrackFunction backtrack,
    std::vector<std::vector<PathEntry>> tree_entries,
    std::vector<std::vector<MaximalLocation>> location_lists) {
    if (a.sigma() != s.sigma()) throw FormatError("alphabet size disagrees with the sequence");
    if (trie.sigma() != s.sigma()) throw FormatError("trie alphabet disagrees with the sequence");
    if (backtrack.params().sigma() != s.sigma())
        throw FormatError("hash alphabet disagrees with the sequence");
    if (backtrack.size() != trie.node_count() - 1u)
        throw FormatError("association count disagrees with the trie");

    switch (kind) {
        case ReportKind::TreePaths:
            if (tree_entries.size() != trie.node_count() || !location_lists.empty())
                throw FormatError("report section does not match its declared kind");
            if (!tree_entries[FingerprintTrie::kRoot].empty())
                throw FormatError("report entries attached to the empty set");
            for (const auto& entries : tree_entries)
                for (const PathEntry& e : entries)
                    if (e.support < 1 || e.support + static_cast<std::uint64_t>(e.offset) > s.n())
                        throw FormatError("occurrence entry outside the sequence");
            break;
        case ReportKind::LocationLists:
            if (location_lists.size() != trie.node_count() || !tree_entries.empty())
                throw FormatError("report section does not match its declared kind");
            if (!location_lists[FingerprintTrie::kRoot].empty())
                throw FormatError("report entries attached to the empty set");
            for (const auto& list : location_lists)
                for (const MaximalLocation& loc : list)
                    if (loc.i < 1 || loc.i > loc.j || loc.j > s.n())
                        throw FormatError("stored location outside the sequence");
            break;
        case ReportKind::NamesOnly:
            if (!tree_entries.empty() || !location_lists.empty())
                throw FormatError("report section does not match its declared kind");
            break;
        default:
            throw FormatError("unknown report kind");
    }

    FingerprintIndex idx;
    idx.seq_ = std::move(s);
    idx.alpha_ = std::move(a);
    idx.kind_ = kind;
    idx.trie_ = std::move(trie);
    idx.backtrack_ = std::move(backtrack);
    idx.tree_entries_ = std::move(tree_entries);
    idx.location_lists_ = std::move(location_lists);
    return idx;
}

void FingerprintIndex::set_equality_method(EqualityMethod m, unsigned partition_rounds) {
    if (m == EqualityMethod::Partitioned && (partition_rounds < 2 || partition_rounds > 64))
        throw KOutOfRange("partition rounds must lie in [2, 64]");
    eq_method_ = m;
    eq_rounds_ = partition_rounds;
}

std::uint64_t FingerprintIndex::location_count() const {
    std::uint64_t total = 0;
    for (const auto& entries : tree_entries_) total += entries.size();
    for (const auto& list : location_lists_) total += list.size();
    return total;
}

FingerprintTrie::NodeId FingerprintIndex::resolve(std::string_view f,
                                                  EqualityScratch& scratch) const {
    // Ranks of f with duplicates dropped, first occurrence kept.
    std::vector<Rank> query;
    query.reserve(f.size());
    std::vector<bool> seen(seq_.sigma(), false);
    for (unsigned char c : f) {
        int r = alpha_.rank(c);
        if (r < 0) return FingerprintTrie::kNoNode;
        if (!seen[static_cast<Rank>(r)]) {
            seen[static_cast<Rank>(r)] = true;
            query.push_back(static_cast<Rank>(r));
        }
    }
    if (query.empty()) return FingerprintTrie::kNoNode;

    // Hash once, then peel one character per step to recover a spelling.
    std::uint64_t h = backtrack_.hash_of(query);
    std::vector<Rank> spelled;
    spelled.reserve(query.size());
    for (std::size_t t = 0; t < query.size(); ++t) {
        Rank r = backtrack_.lookup(h);
        spelled.push_back(r);
        h = backtrack_.peel(h, r);
    }

    // The peeled spelling must carry exactly the query's set...
    bool same = false;
    try {
        switch (eq_method_) {
            case EqualityMethod::Bits:
                same = eq_bits(spelled, query, scratch);
                break;
            case EqualityMethod::Hash:
                same = eq_hash(spelled, query);
                break;
            case EqualityMethod::Partitioned:
                same = eq_partitioned(spelled, query, eq_rounds_, scratch);
                break;
        }
    } catch (const DuplicateCharacter&) {
        return FingerprintTrie::kNoNode;  // a garbage spelling may repeat ranks
    }
    if (!same) return FingerprintTrie::kNoNode;

    // ...and be readable in the trie, last peeled character first.
    std::reverse(spelled.begin(), spelled.end());
    return trie_.walk(spelled);
}

bool FingerprintIndex::exists(std::string_view f) const {
    EqualityScratch scratch(seq_.sigma());
    return exists(f, scratch);
}

bool FingerprintIndex::exists(std::string_view f, EqualityScratch& scratch) const {
    return resolve(f, scratch) != FingerprintTrie::kNoNode;
}

std::vector<MaximalLocation> FingerprintIndex::report(std::string_view f) const {
    if (kind_ == ReportKind::NamesOnly)
        throw Error("this index stores fingerprint names only, not their locations");
    EqualityScratch scratch(seq_.sigma());
    FingerprintTrie::NodeId v = resolve(f, scratch);
    if (v == FingerprintTrie::kNoNode || v == FingerprintTrie::kRoot)
        throw UnknownFingerprint("no substring has character set \"" + std::string(f) + "\"");
    if (kind_ == ReportKind::LocationLists) return location_lists_[v];
    std::vector<MaximalLocation> out;
    out.reserve(tree_entries_[v].size());
    for (const PathEntry& e : tree_entries_[v])
        out.push_back(extend(seq_, e.support, e.support + e.offset));
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> FingerprintIndex::report_raw(
    std::string_view f) const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (MaximalLocation loc : report(f)) out.push_back(denormalize(seq_, loc));
    return out;
}

}  // namespace fpindex
