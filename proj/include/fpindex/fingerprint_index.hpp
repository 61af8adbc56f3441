#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpindex/errors.hpp"
#include "fpindex/polyhash.hpp"
#include "fpindex/seqcore.hpp"
#include "fpindex/set_equality.hpp"

namespace fpindex {

// How the index was assembled.
enum class BuildMode : std::uint8_t {
    Exact = 0,       // suffix tree -> participation tree -> level-wise naming
    Randomized = 1,  // change enumeration + hash-table naming (exact output)
    MonteCarlo = 2,  // change enumeration + polynomial hash names
};

// What the per-fingerprint report section stores.
enum class ReportKind : std::uint8_t {
    TreePaths = 0,      // (offset, support) pairs; locations rebuilt via extend()
    LocationLists = 1,  // explicit sorted location lists
    NamesOnly = 2,      // nothing; report() is unavailable
};

// Which set-comparison routine the query pipeline uses.
enum class EqualityMethod : std::uint8_t { Bits = 0, Hash = 1, Partitioned = 2 };

// Trie over character sets: the root is the empty set and each edge adds one
// character absent from the parent's set, so every node stands for the set of
// labels on its root path and every root path spells pairwise-distinct
// characters. Node ids are dense; parents precede children.
class FingerprintTrie {
  public:
    using NodeId = std::uint32_t;
    static constexpr NodeId kRoot = 0;
    static constexpr NodeId kNoNode = static_cast<NodeId>(-1);

    FingerprintTrie() = default;

    // Assembles a trie from one spelling per set. Each spelling must list
    // pairwise-distinct ranks below sigma, and for every spelling the set
    // minus its last character must be spelled by some other (shorter) input.
    // Insertion goes by increasing length, ties in input order; each
    // spelling's last character fixes the edge into its node. Note the root
    // path of a node may spell its set in a different order than the input
    // word did; node_of_word (when given) receives each input's node id.
    // Throws DuplicateSets when two spellings share a set and NotPrefixClosed
    // when a parent set is missing.
    static FingerprintTrie from_words(const std::vector<std::vector<Rank>>& words,
                                      std::uint32_t sigma,
                                      std::vector<NodeId>* node_of_word = nullptr);

    // Rebuilds from stored parent/label arrays (deserialization path).
    // Validates shape, edge uniqueness, root-path distinctness, and global
    // set uniqueness; throws FormatError otherwise.
    static FingerprintTrie from_arrays(std::vector<NodeId> parents, std::vector<Rank> labels,
                                       std::uint32_t sigma);

    NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
    std::uint32_t sigma() const { return sigma_; }
    NodeId parent(NodeId v) const { return nodes_[v].parent; }
    // Incoming edge label; meaningless for the root (stored as 0).
    Rank label(NodeId v) const { return nodes_[v].label; }
    // Size of the node's set.
    std::uint32_t depth(NodeId v) const { return nodes_[v].depth; }
    // Child of v along rank r, kNoNode when absent. Expected O(1).
    NodeId child(NodeId v, Rank r) const;
    // Labels from the root down to v (v's spelling).
    std::vector<Rank> word_of(NodeId v) const;
    // Follows `word` from the root; kNoNode when the walk leaves the trie.
    NodeId walk(std::span<const Rank> word) const;

  private:
    struct Node {
        NodeId parent = 0;
        Rank label = 0;
        std::uint32_t depth = 0;
    };

    NodeId attach(NodeId parent, Rank label);

    std::vector<Node> nodes_{Node{}};
    // (parent << 32 | label) -> child
    std::unordered_map<std::uint64_t, NodeId> children_;
    std::uint32_t sigma_ = 0;
};

// Bottom-up companion of the trie: maps the polynomial hash of each stored
// set to the last character of that set's spelling. The hash point is drawn
// until all stored sets get distinct values; probing an unknown hash value
// returns an arbitrary rank instead of failing.
class BacktrackFunction {
  public:
    BacktrackFunction() = default;

    // One hash association per non-root trie node, computed by a top-down
    // traversal adding one power per edge. The modulus lands in
    // [max(2, m^2 sigma), 2 m^2 sigma] for m stored sets; the point is
    // resampled until injective (RetryLimitExceeded if a large budget runs
    // out).
    static BacktrackFunction build(const FingerprintTrie& trie, std::mt19937_64& rng);

    // Rebuilds from stored parameters and associations (deserialization
    // path). Throws FormatError on duplicate or out-of-range entries.
    static BacktrackFunction from_pairs(const HashParams& params,
                                        const std::vector<std::pair<std::uint64_t, Rank>>& pairs);

    const HashParams& params() const { return params_; }
    std::size_t size() const { return size_; }

    // Hash of a set given by pairwise-distinct ranks.
    std::uint64_t hash_of(std::span<const Rank> distinct_ranks) const;
    // Rank stored for h; an arbitrary in-range rank when h is unknown.
    Rank lookup(std::uint64_t h) const;
    // Hash of the set minus character r (subtracts one power).
    std::uint64_t peel(std::uint64_t h, Rank r) const;

    // Stored associations sorted by hash value (serialization path).
    std::vector<std::pair<std::uint64_t, Rank>> associations() const;

  private:
    void insert(std::uint64_t h, Rank r);

    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

    HashParams params_;
    std::vector<std::uint64_t> keys_;
    std::vector<Rank> vals_;
    std::uint64_t mask_ = 0;
    std::size_t size_ = 0;
};

// Immutable index over one normalized sequence: answers whether a character
// set occurs as the distinct-character set of some substring, and reports all
// maximal locations carrying that set. Queries take time linear in the query
// length (plus output size for reports).
class FingerprintIndex {
  public:
    // One stored occurrence entry when report_kind() == TreePaths: the
    // location is extend(support, support + offset).
    struct PathEntry {
        std::uint32_t offset = 0;
        Pos support = 0;
    };

    FingerprintIndex() = default;

    // mc_confidence and mc_locations apply to MonteCarlo builds only: the
    // error probability is at most n^-confidence, and turning locations off
    // keeps names/membership but drops the report section.
    static FingerprintIndex build(const Sequence& s, const Alphabet& a, BuildMode mode,
                                  std::mt19937_64& rng, std::uint32_t mc_confidence = 2,
                                  bool mc_locations = true);

    // Reassembles an index from stored parts (deserialization path); checks
    // cross-section coherence and throws FormatError on mismatch.
    static FingerprintIndex from_parts(Sequence s, Alphabet a, ReportKind kind,
                                       FingerprintTrie trie, BacktrackFunction backtrack,
                                       std::vector<std::vector<PathEntry>> tree_entries,
                                       std::vector<std::vector<MaximalLocation>> location_lists);

    // True iff the set of f's characters is the distinct-character set of
    // some substring. Characters outside the alphabet, and the empty set,
    // give false; duplicates in f are ignored. Thread-safe provided each
    // caller passes its own scratch.
    bool exists(std::string_view f) const;
    bool exists(std::string_view f, EqualityScratch& scratch) const;

    // All maximal locations whose distinct-character set equals set(f), in
    // normalized coordinates, sorted. Throws UnknownFingerprint when set(f)
    // is not indexed and Error when the index stores names only.
    std::vector<MaximalLocation> report(std::string_view f) const;
    // Same locations in raw-input byte coordinates.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> report_raw(std::string_view f) const;

    // Set-comparison routine used by exists(); partition_rounds only applies
    // to Partitioned (2..64 rounds).
    void set_equality_method(EqualityMethod m, unsigned partition_rounds = 2);
    EqualityMethod equality_method() const { return eq_method_; }
    unsigned partition_rounds() const { return eq_rounds_; }

    std::uint64_t fingerprint_count() const { return trie_.node_count() - 1; }
    // Stored occurrence entries over all fingerprints (0 when names-only).
    std::uint64_t location_count() const;
    ReportKind report_kind() const { return kind_; }
    const Sequence& sequence() const { return seq_; }
    const Alphabet& alphabet() const { return alpha_; }
    const FingerprintTrie& trie() const { return trie_; }
    const BacktrackFunction& backtrack() const { return backtrack_; }
    const std::vector<std::vector<PathEntry>>& tree_entries() const { return tree_entries_; }
    const std::vector<std::vector<MaximalLocation>>& location_lists() const {
        return location_lists_;
    }

  private:
    // Peels the query set's hash down to a candidate spelling, compares sets,
    // and walks the trie; returns the matched node or kNoNode.
    FingerprintTrie::NodeId resolve(std::string_view f, EqualityScratch& scratch) const;

    Sequence seq_;
    Alphabet alpha_;
    ReportKind kind_ = ReportKind::TreePaths;
    FingerprintTrie trie_;
    BacktrackFunction backtrack_;
    // Indexed by trie node id; root slot stays empty.
    std::vector<std::vector<PathEntry>> tree_entries_;
    std::vector<std::vector<MaximalLocation>> location_lists_;
    EqualityMethod eq_method_ = EqualityMethod::Bits;
    unsigned eq_rounds_ = 2;
};

}  // namespace fpindex
