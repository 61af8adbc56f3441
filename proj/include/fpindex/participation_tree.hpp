#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpindex/seqcore.hpp"
#include "fpindex/suffix_tree.hpp"

namespace fpindex {

// Maintained list of extended first occurrences for a sliding suffix start.
// For the current start i it holds the positions of the first occurrence of
// each distinct character of s_i..s_{n+1}, in increasing position order; the
// sentinel cell n+1 is always the last one. `tp` points at the deepest cell
// that still belongs to the start character's first-occurrence run, i.e. the
// largest position strictly below the next occurrence of s_i after i.
class EfoList {
  public:
    // Positions the list at start i = n.
    explicit EfoList(const Sequence& s);

    // Moves the start from i to i-1 in O(1). Requires current() >= 2.
    void step();

    Pos current() const { return current_; }
    // Next position of the start character after current(), n+2 if none.
    Pos next_occurrence() const { return p_; }
    // Cell position of tp (always set: the cell at current() qualifies).
    Pos tp() const { return tp_; }

    Pos front() const { return head_; }
    Pos back() const { return tail_; }
    Pos prev(Pos cell) const { return prev_[cell]; }
    Pos next(Pos cell) const { return next_[cell]; }
    // Position of the cell holding rank r, 0 if absent.
    Pos cell_of_rank(Rank r) const { return pos_of_rank_[r]; }

    std::vector<Pos> positions() const;

  private:
    void unlink(Pos cell);
    void push_front(Pos cell);
    void move_to(Pos i);

    const Sequence* s_;
    std::vector<Pos> prev_, next_;
    std::vector<Pos> pos_of_rank_;
    Pos head_ = 0, tail_ = 0;
    Pos current_ = 0, p_ = 0, tp_ = 0;
};

// Tree of the new-character contributions of every suffix, built by pruning
// and contracting the suffix tree. Each root path spells a string of
// pairwise-distinct characters; the character set of any substring of s is
// spelled by at least one root path. Children may repeat a character, so the
// tree is navigated structurally rather than as a deterministic trie.
class ParticipationTree {
  public:
    using NodeId = std::uint32_t;
    static constexpr NodeId kRoot = 0;

    ParticipationTree(const Sequence& s, const SuffixTree& st);

    NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
    NodeId edge_count() const { return node_count() - 1; }
    NodeId parent(NodeId v) const { return nodes_[v].parent; }
    Rank edge_char(NodeId v) const { return nodes_[v].ch; }
    // Offset of this node's character from any attached start m below it:
    // the character sits at text position m + rel(v).
    Pos rel(NodeId v) const { return nodes_[v].rel; }
    Pos depth(NodeId v) const { return nodes_[v].depth; }
    const std::vector<std::pair<Rank, NodeId>>& children(NodeId v) const {
        return nodes_[v].children;
    }
    const std::vector<Pos>& attached(NodeId v) const {
        return nodes_[v].attached;
    }

    std::vector<Pos> subtree_attachments(NodeId v) const;
    std::vector<Rank> path_word(NodeId v) const;

    struct RootPath {
        NodeId node;
        std::vector<Rank> word;
        std::vector<Pos> suffixes;  // attachments in the node's subtree
    };
    std::vector<RootPath> root_paths() const;

    // All maximal locations whose right-anchored first-occurrence label is
    // the path word of v and whose support is attached below v. Over all
    // nodes these sets partition the maximal locations of s.
    std::vector<MaximalLocation> report(const Sequence& s, NodeId v) const;

    std::string to_dot(const Sequence& s, const Alphabet& a) const;

  private:
    struct Node {
        NodeId parent = 0;
        Rank ch = 0;
        Pos rel = 0;
        Pos depth = 0;
        std::vector<std::pair<Rank, NodeId>> children;
        std::vector<Pos> attached;
    };

    NodeId add_child(NodeId at, Rank c, Pos rel);

    std::vector<Node> nodes_;
};

}  // namespace fpindex
