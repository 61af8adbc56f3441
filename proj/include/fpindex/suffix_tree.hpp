#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpindex/seqcore.hpp"

namespace fpindex {

// Suffix tree of the sentinel-terminated sequence s_1..s_{n+1}. Every suffix
// ends at its own leaf because the sentinel is unique. After construction each
// edge interval [k,l] (1-based, inclusive) is re-anchored to point into the
// leftmost occurrence of the path spelled from the root: for an edge into
// node q, k = min(Suff(q)) + depth(parent(q)).
class SuffixTree {
  public:
    using NodeId = std::uint32_t;
    static constexpr NodeId kRoot = 0;

    explicit SuffixTree(const Sequence& s);

    NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
    NodeId parent(NodeId v) const { return nodes_[v].parent; }
    bool is_leaf(NodeId v) const { return nodes_[v].children.empty(); }

    // Children in increasing order of their first edge character.
    const std::vector<std::pair<Rank, NodeId>>& children(NodeId v) const {
        return nodes_[v].children;
    }

    // Number of characters on the root-to-v path.
    Pos str_depth(NodeId v) const { return nodes_[v].depth; }

    // Smallest 1-based suffix start among the leaves below v.
    Pos min_suffix(NodeId v) const { return nodes_[v].min_suffix; }

    // 1-based inclusive interval of the edge entering v (v != root).
    std::pair<Pos, Pos> edge_interval(NodeId v) const {
        return {nodes_[v].k, nodes_[v].l};
    }
    Pos edge_length(NodeId v) const { return nodes_[v].l - nodes_[v].k + 1; }

    // Suffix start position of a leaf (1-based; n+1 for the sentinel leaf).
    Pos leaf_suffix(NodeId v) const { return nodes_[v].min_suffix; }
    NodeId leaf_for_suffix(Pos i) const { return leaf_of_[i - 1]; }

    std::vector<Pos> subtree_suffixes(NodeId v) const;

    std::string to_dot(const Sequence& s, const Alphabet& a) const;

  private:
    struct Node {
        Pos k = 0, l = 0;        // re-anchored edge interval, 1-based inclusive
        NodeId parent = 0;
        Pos depth = 0;
        Pos min_suffix = 0;
        std::vector<std::pair<Rank, NodeId>> children;
    };

    std::vector<Node> nodes_;
    std::vector<NodeId> leaf_of_;  // suffix start (0-based) -> leaf node
};

}  // namespace fpindex
