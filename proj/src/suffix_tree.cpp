#include "fpindex/suffix_tree.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>
#include <stack>

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {

constexpr int kOpenEnd = std::numeric_limits<int>::max();

// Build-time node for the online construction; converted to the compact
// public layout afterwards.
struct BuildNode {
    int start = 0;          // 0-based index of the first edge character
    int end = kOpenEnd;     // 0-based exclusive end; kOpenEnd for growing leaves
    int link = 0;
    std::vector<std::pair<Rank, int>> children;  // sorted by rank

    int find(Rank c) const {
        auto it = std::lower_bound(
            children.begin(), children.end(), c,
            [](const auto& e, Rank r) { return e.first < r; });
        if (it != children.end() && it->first == c) return it->second;
        return -1;
    }
    void attach(Rank c, int child) {
        auto it = std::lower_bound(
            children.begin(), children.end(), c,
            [](const auto& e, Rank r) { return e.first < r; });
        if (it != children.end() && it->first == c) {
            it->second = child;
        } else {
            children.insert(it, {c, child});
        }
    }
};

class Builder {
  public:
    explicit Builder(const Sequence& s) : s_(s), n1_(static_cast<int>(s.n()) + 1) {
        text_.reserve(n1_);
        for (int p = 1; p <= n1_; ++p) text_.push_back(s.rank_at(static_cast<Pos>(p)));
        nodes_.push_back(BuildNode{0, 0, 0, {}});  // root
        for (pos_ = 0; pos_ < n1_; ++pos_) extend();
    }

    std::vector<BuildNode>& nodes() { return nodes_; }
    int edge_len(int v) const {
        return std::min(nodes_[v].end, pos_ + 1) - nodes_[v].start;
    }
    int text_length() const { return n1_; }

  private:
    int new_node(int start, int end) {
        nodes_.push_back(BuildNode{start, end, 0, {}});
        return static_cast<int>(nodes_.size()) - 1;
    }

    void link_from(int v) {
        if (need_link_ > 0) nodes_[need_link_].link = v;
        need_link_ = v;
    }

    void extend() {
        need_link_ = 0;
        ++remainder_;
        while (remainder_ > 0) {
            if (active_len_ == 0) active_edge_ = pos_;
            int next = nodes_[active_node_].find(text_[active_edge_]);
            if (next < 0) {
                int leaf = new_node(pos_, kOpenEnd);
                nodes_[active_node_].attach(text_[active_edge_], leaf);
                link_from(active_node_);
            } else {
                int len = edge_len(next);
                if (active_len_ >= len) {
                    active_edge_ += len;
                    active_len_ -= len;
                    active_node_ = next;
                    continue;
                }
                if (text_[nodes_[next].start + active_len_] == text_[pos_]) {
                    ++active_len_;
                    link_from(active_node_);
                    break;
                }
                int split = new_node(nodes_[next].start,
                                     nodes_[next].start + active_len_);
                nodes_[active_node_].attach(text_[active_edge_], split);
                nodes_[next].start += active_len_;
                nodes_[split].attach(text_[nodes_[next].start], next);
                int leaf = new_node(pos_, kOpenEnd);
                nodes_[split].attach(text_[pos_], leaf);
                link_from(split);
            }
            --remainder_;
            if (active_node_ == 0 && active_len_ > 0) {
                --active_len_;
                active_edge_ = pos_ - remainder_ + 1;
            } else if (active_node_ != 0) {
                active_node_ = nodes_[active_node_].link;
            }
        }
    }

    const Sequence& s_;
    int n1_;
    std::vector<Rank> text_;
    std::vector<BuildNode> nodes_;
    int active_node_ = 0, active_edge_ = 0, active_len_ = 0;
    int remainder_ = 0, need_link_ = 0, pos_ = -1;
};

}  // namespace

SuffixTree::SuffixTree(const Sequence& s) {
    Builder b(s);
    auto& raw = b.nodes();
    const int n1 = b.text_length();

    // Map build nodes to compact ids in DFS preorder so children stay sorted.
    std::vector<NodeId> id(raw.size(), 0);
    nodes_.clear();
    nodes_.reserve(raw.size());
    leaf_of_.assign(static_cast<std::size_t>(n1), 0);

    struct Frame {
        int v;
        NodeId parent;
        Pos parent_depth;
    };
    std::stack<Frame> st;
    st.push({0, 0, 0});
    // Preorder: assign ids, depths, parents, provisional intervals.
    std::vector<int> order;  // compact id -> raw id
    while (!st.empty()) {
        Frame f = st.top();
        st.pop();
        NodeId me = static_cast<NodeId>(nodes_.size());
        id[static_cast<std::size_t>(f.v)] = me;
        order.push_back(f.v);
        Node node;
        node.parent = f.parent;
        const BuildNode& bn = raw[static_cast<std::size_t>(f.v)];
        int end = std::min(bn.end, n1);
        Pos elen = (f.v == 0) ? 0 : static_cast<Pos>(end - bn.start);
        node.depth = f.parent_depth + elen;
        node.k = static_cast<Pos>(bn.start + 1);
        node.l = static_cast<Pos>(end);
        nodes_.push_back(std::move(node));
        // Push children in reverse so the smallest rank is processed first.
        for (auto it = bn.children.rbegin(); it != bn.children.rend(); ++it) {
            st.push({it->second, me, nodes_[me].depth});
        }
    }
    // Fill child vectors now that every node has a compact id.
    for (NodeId me = 0; me < node_count(); ++me) {
        const BuildNode& bn = raw[static_cast<std::size_t>(order[me])];
        nodes_[me].children.reserve(bn.children.size());
        for (const auto& [r, c] : bn.children) {
            nodes_[me].children.emplace_back(r, id[static_cast<std::size_t>(c)]);
        }
    }

    // Post-order: min_suffix from leaves up, then re-anchor edges so that the
    // interval of the edge into q starts at min(Suff(q)) + depth(parent(q)).
    std::vector<NodeId> post;
    post.reserve(node_count());
    {
        std::stack<NodeId> s2;
        s2.push(kRoot);
        while (!s2.empty()) {
            NodeId v = s2.top();
            s2.pop();
            post.push_back(v);
            for (const auto& [r, c] : nodes_[v].children) s2.push(c);
        }
    }
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
        NodeId v = *it;
        if (is_leaf(v)) {
            // depth counts characters through the sentinel; suffix start is
            // n+1 - depth + 1 in 1-based terms.
            nodes_[v].min_suffix = static_cast<Pos>(n1) - nodes_[v].depth + 1;
            leaf_of_[nodes_[v].min_suffix - 1] = v;
        } else {
            Pos m = std::numeric_limits<Pos>::max();
            for (const auto& [r, c] : nodes_[v].children) {
                m = std::min(m, nodes_[c].min_suffix);
            }
            nodes_[v].min_suffix = m;
        }
    }
    for (NodeId v = 1; v < node_count(); ++v) {
        Pos m = nodes_[v].min_suffix;
        Pos dp = nodes_[nodes_[v].parent].depth;
        Pos len = nodes_[v].l - nodes_[v].k + 1;
        nodes_[v].k = m + dp;
        nodes_[v].l = m + dp + len - 1;
    }
    nodes_[kRoot].k = nodes_[kRoot].l = 0;
}

std::vector<Pos> SuffixTree::subtree_suffixes(NodeId v) const {
    std::vector<Pos> out;
    std::stack<NodeId> st;
    st.push(v);
    while (!st.empty()) {
        NodeId u = st.top();
        st.pop();
        if (is_leaf(u)) {
            out.push_back(nodes_[u].min_suffix);
        } else {
            for (const auto& [r, c] : nodes_[u].children) st.push(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string SuffixTree::to_dot(const Sequence& s, const Alphabet& a) const {
    std::ostringstream os;
    os << "digraph suffix_tree {\n  node [shape=circle];\n";
    for (NodeId v = 0; v < node_count(); ++v) {
        if (is_leaf(v)) {
            os << "  n" << v << " [shape=box,label=\"" << leaf_suffix(v)
               << "\"];\n";
        } else {
            os << "  n" << v << " [label=\"\"];\n";
        }
        if (v != kRoot) {
            auto [k, l] = edge_interval(v);
            os << "  n" << parent(v) << " -> n" << v << " [label=\"";
            for (Pos p = k; p <= l; ++p) {
                Rank r = s.rank_at(p);
                os << (r == s.sentinel_rank() ? '#' : a.unrank(r));
            }
            os << " [" << k << "," << l << "]\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace fpindex
