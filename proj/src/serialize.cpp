#include "fpindex/serialize.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fpindex {

namespace {

constexpr char kMagic[4] = {'F', 'P', 'I', 'X'};
constexpr std::uint32_t kVersion = 1;

// Byte-wise little-endian writer/reader, independent of host width rules.
class Writer {
  public:
    explicit Writer(std::ostream& os) : os_(os) {}

    void bytes(const void* p, std::size_t count) {
        os_.write(static_cast<const char*>(p), static_cast<std::streamsize>(count));
    }
    void u8(std::uint8_t v) { bytes(&v, 1); }
    void u32(std::uint32_t v) { uint(v, 4); }
    void u64(std::uint64_t v) { uint(v, 8); }

  private:
    void uint(std::uint64_t v, unsigned width) {
        char buf[8];
        for (unsigned t = 0; t < width; ++t) buf[t] = static_cast<char>((v >> (8 * t)) & 0xff);
        bytes(buf, width);
    }

    std::ostream& os_;
};

class Reader {
  public:
    explicit Reader(std::istream& is) : is_(is) {}

    void bytes(void* p, std::size_t count) {
        is_.read(static_cast<char*>(p), static_cast<std::streamsize>(count));
        if (is_.gcount() != static_cast<std::streamsize>(count))
            throw FormatError("index file is truncated");
    }
    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
    std::uint64_t u64() { return uint(8); }

    bool at_end() {
        is_.peek();
        return is_.eof();
    }

  private:
    std::uint64_t uint(unsigned width) {
        unsigned char buf[8];
        bytes(buf, width);
        std::uint64_t v = 0;
        for (unsigned t = 0; t < width; ++t) v |= static_cast<std::uint64_t>(buf[t]) << (8 * t);
        return v;
    }

    std::istream& is_;
};

}  // namespace

void save_index(const FingerprintIndex& idx, std::ostream& os) {
    Writer w(os);
    const Sequence& s = idx.sequence();
    const Alphabet& a = idx.alphabet();
    const FingerprintTrie& trie = idx.trie();

    w.bytes(kMagic, 4);
    w.u32(kVersion);
    w.u8(static_cast<std::uint8_t>(idx.report_kind()));

    w.u32(s.sigma());
    for (Rank r = 0; r < s.sigma(); ++r) w.u8(a.unrank(r));

    w.u32(s.n());
    w.u64(s.raw_length());
    for (Pos p = 1; p <= s.n(); ++p) w.u8(static_cast<std::uint8_t>(s.rank_at(p)));
    for (Pos p = 1; p <= s.n(); ++p) {
        auto [lo, hi] = s.run(p);
        w.u64(lo);
        w.u64(hi);
    }

    w.u32(trie.node_count());
    for (FingerprintTrie::NodeId v = 0; v < trie.node_count(); ++v) {
        w.u32(trie.parent(v));
        w.u8(static_cast<std::uint8_t>(trie.label(v)));
    }

    const BacktrackFunction& bt = idx.backtrack();
    w.u64(bt.params().P());
    w.u64(bt.params().X());
    w.u32(bt.params().c());
    auto pairs = bt.associations();
    w.u32(static_cast<std::uint32_t>(pairs.size()));
    for (auto [h, r] : pairs) {
        w.u64(h);
        w.u8(static_cast<std::uint8_t>(r));
    }

    switch (idx.report_kind()) {
        case ReportKind::TreePaths:
            for (FingerprintTrie::NodeId v = 1; v < trie.node_count(); ++v) {
                const auto& entries = idx.tree_entries()[v];
                w.u32(static_cast<std::uint32_t>(entries.size()));
                for (const FingerprintIndex::PathEntry& e : entries) {
                    w.u32(e.offset);
                    w.u32(e.support);
                }
            }
            break;
        case ReportKind::LocationLists:
            for (FingerprintTrie::NodeId v = 1; v < trie.node_count(); ++v) {
                const auto& list = idx.location_lists()[v];
                w.u32(static_cast<std::uint32_t>(list.size()));
                for (const MaximalLocation& loc : list) {
                    w.u32(loc.i);
                    w.u32(loc.j);
                }
            }
            break;
        case ReportKind::NamesOnly:
            break;
    }
    os.flush();
}

FingerprintIndex load_index(std::istream& is) {
    Reader r(is);

    char magic[4];
    r.bytes(magic, 4);
    if (!std::equal(magic, magic + 4, kMagic)) throw FormatError("not an index file");
    std::uint32_t version = r.u32();
    if (version != kVersion)
        throw FormatError("unsupported index version " + std::to_string(version));
    std::uint8_t kind_byte = r.u8();
    if (kind_byte > static_cast<std::uint8_t>(ReportKind::NamesOnly))
        throw FormatError("unknown report kind " + std::to_string(kind_byte));
    ReportKind kind = static_cast<ReportKind>(kind_byte);

    std::uint32_t sigma = r.u32();
    if (sigma == 0 || sigma > 256) throw FormatError("alphabet size out of range");
    Alphabet alpha;
    for (std::uint32_t t = 0; t < sigma; ++t) {
        unsigned char c = r.u8();
        if (alpha.intern(c) != t) throw FormatError("alphabet repeats a byte");
    }

    std::uint32_t n = r.u32();
    if (n == 0) throw FormatError("index holds an empty sequence");
    std::uint64_t raw_length = r.u64();
    if (raw_length < n) throw FormatError("raw length shorter than the sequence");
    // Grow-as-read keeps a lied-about count from allocating past file size.
    std::vector<Rank> ranks;
    for (std::uint32_t t = 0; t < n; ++t) ranks.push_back(r.u8());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
    for (std::uint32_t t = 0; t < n; ++t) {
        std::uint64_t lo = r.u64();
        std::uint64_t hi = r.u64();
        runs.emplace_back(lo, hi);
    }
    Sequence seq = sequence_from_parts(std::move(ranks), std::move(runs), sigma, raw_length);

    std::uint32_t node_count = r.u32();
    if (node_count < 2) throw FormatError("trie must hold the root and one set");
    if (node_count > std::uint64_t{n} * sigma + 1)
        throw FormatError("trie larger than any fingerprint family of this sequence");
    std::vector<FingerprintTrie::NodeId> parents;
    std::vector<Rank> labels;
    for (std::uint32_t v = 0; v < node_count; ++v) {
        parents.push_back(r.u32());
        labels.push_back(r.u8());
    }
    FingerprintTrie trie = FingerprintTrie::from_arrays(std::move(parents), std::move(labels),
                                                        sigma);

    std::uint64_t P = r.u64();
    std::uint64_t X = r.u64();
    std::uint32_t c = r.u32();
    if (P < 2 || P >= (std::uint64_t{1} << 62)) throw FormatError("hash modulus out of range");
    if (c < 1 || c > 64) throw FormatError("hash digit count out of range");
    std::uint32_t pair_count = r.u32();
    if (pair_count != node_count - 1)
        throw FormatError("association count disagrees with the trie");
    std::vector<std::pair<std::uint64_t, Rank>> pairs;
    for (std::uint32_t t = 0; t < pair_count; ++t) {
        std::uint64_t h = r.u64();
        Rank rank = r.u8();
        pairs.emplace_back(h, rank);
    }
    BacktrackFunction bt = BacktrackFunction::from_pairs(HashParams(P, X, sigma, c), pairs);

    std::vector<std::vector<FingerprintIndex::PathEntry>> tree_entries;
    std::vector<std::vector<MaximalLocation>> location_lists;
    switch (kind) {
        case ReportKind::TreePaths:
            tree_entries.resize(node_count);
            for (std::uint32_t v = 1; v < node_count; ++v) {
                std::uint32_t count = r.u32();
                // One location per support position at most.
                if (count > seq.n()) throw FormatError("occurrence count out of range");
                for (std::uint32_t t = 0; t < count; ++t) {
                    FingerprintIndex::PathEntry e;
                    e.offset = r.u32();
                    e.support = r.u32();
                    tree_entries[v].push_back(e);
                }
            }
            break;
        case ReportKind::LocationLists:
            location_lists.resize(node_count);
            for (std::uint32_t v = 1; v < node_count; ++v) {
                std::uint32_t count = r.u32();
                if (count > seq.n()) throw FormatError("occurrence count out of range");
                for (std::uint32_t t = 0; t < count; ++t) {
                    MaximalLocation loc;
                    loc.i = r.u32();
                    loc.j = r.u32();
                    location_lists[v].push_back(loc);
                }
            }
            break;
        case ReportKind::NamesOnly:
            break;
    }
    if (!r.at_end()) throw FormatError("trailing bytes after the report section");

    return FingerprintIndex::from_parts(std::move(seq), alpha, kind, std::move(trie),
                                        std::move(bt), std::move(tree_entries),
                                        std::move(location_lists));
}

void save_index_file(const FingerprintIndex& idx, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot open " + path + " for writing");
    save_index(idx, os);
    if (!os) throw FormatError("write to " + path + " failed");
}

FingerprintIndex load_index_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open " + path);
    return load_index(is);
}

std::string index_to_json(const FingerprintIndex& idx) {
    nlohmann::json j;
    const Sequence& s = idx.sequence();
    const Alphabet& a = idx.alphabet();
    const FingerprintTrie& trie = idx.trie();

    j["version"] = kVersion;
    switch (idx.report_kind()) {
        case ReportKind::TreePaths: j["report_kind"] = "tree_paths"; break;
        case ReportKind::LocationLists: j["report_kind"] = "location_lists"; break;
        case ReportKind::NamesOnly: j["report_kind"] = "names_only"; break;
    }

    std::string letters;
    for (Rank r = 0; r < s.sigma(); ++r) letters.push_back(static_cast<char>(a.unrank(r)));
    j["sigma"] = s.sigma();
    j["alphabet"] = letters;

    j["n"] = s.n();
    j["raw_length"] = s.raw_length();
    std::string normalized;
    for (Pos p = 1; p <= s.n(); ++p)
        normalized.push_back(static_cast<char>(a.unrank(s.rank_at(p))));
    j["normalized_text"] = normalized;
    nlohmann::json runs = nlohmann::json::array();
    for (Pos p = 1; p <= s.n(); ++p) {
        auto [lo, hi] = s.run(p);
        runs.push_back({lo, hi});
    }
    j["runs"] = runs;

    nlohmann::json nodes = nlohmann::json::array();
    for (FingerprintTrie::NodeId v = 0; v < trie.node_count(); ++v) {
        nlohmann::json node;
        node["parent"] = trie.parent(v);
        node["label"] =
            v == FingerprintTrie::kRoot
                ? std::string()
                : std::string(1, static_cast<char>(a.unrank(trie.label(v))));
        nodes.push_back(node);
    }
    j["trie"] = {{"node_count", trie.node_count()}, {"nodes", nodes}};

    const BacktrackFunction& bt = idx.backtrack();
    nlohmann::json assoc = nlohmann::json::array();
    for (auto [h, rank] : bt.associations())
        assoc.push_back({{"hash", h},
                         {"label", std::string(1, static_cast<char>(a.unrank(rank)))}});
    j["backtrack"] = {{"modulus", bt.params().P()},
                      {"point", bt.params().X()},
                      {"digits", bt.params().c()},
                      {"associations", assoc}};

    j["fingerprints"] = idx.fingerprint_count();
    j["stored_locations"] = idx.location_count();
    switch (idx.report_kind()) {
        case ReportKind::TreePaths: {
            nlohmann::json report = nlohmann::json::array();
            for (FingerprintTrie::NodeId v = 1; v < trie.node_count(); ++v) {
                nlohmann::json entries = nlohmann::json::array();
                for (const FingerprintIndex::PathEntry& e : idx.tree_entries()[v])
                    entries.push_back({{"offset", e.offset}, {"support", e.support}});
                report.push_back({{"node", v}, {"entries", entries}});
            }
            j["report"] = report;
            break;
        }
        case ReportKind::LocationLists: {
            nlohmann::json report = nlohmann::json::array();
            for (FingerprintTrie::NodeId v = 1; v < trie.node_count(); ++v) {
                nlohmann::json locs = nlohmann::json::array();
                for (const MaximalLocation& loc : idx.location_lists()[v])
                    locs.push_back({loc.i, loc.j});
                report.push_back({{"node", v}, {"locations", locs}});
            }
            j["report"] = report;
            break;
        }
        case ReportKind::NamesOnly:
            break;
    }
    return j.dump(2);
}

}  // namespace fpindex
