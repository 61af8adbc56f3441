#include "fpindex/participation_tree.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stack>

#include "fpindex/errors.hpp"

namespace fpindex {

EfoList::EfoList(const Sequence& s) : s_(&s) {
    const Pos n1 = s.n() + 1;
    prev_.assign(n1 + 2, 0);
    next_.assign(n1 + 2, 0);
    pos_of_rank_.assign(s.sigma() + 1, 0);
    push_front(n1);
    pos_of_rank_[s.sentinel_rank()] = n1;
    current_ = n1;
    move_to(s.n());
}

void EfoList::step() {
    if (current_ < 2) throw IndexOutOfRange("list already at start 1");
    move_to(current_ - 1);
}

void EfoList::move_to(Pos i) {
    Rank r = s_->rank_at(i);
    Pos old = pos_of_rank_[r];
    if (old != 0) {
        p_ = old;
        tp_ = prev_[old];  // may be 0 when old was the head; fixed below
        unlink(old);
    } else {
        p_ = s_->n() + 2;
        tp_ = tail_;
    }
    push_front(i);
    pos_of_rank_[r] = i;
    if (tp_ == 0) tp_ = i;  // only the fresh head cell sits before p
    current_ = i;
}

void EfoList::unlink(Pos cell) {
    Pos p = prev_[cell], q = next_[cell];
    if (p != 0) next_[p] = q; else head_ = q;
    if (q != 0) prev_[q] = p; else tail_ = p;
    prev_[cell] = next_[cell] = 0;
}

void EfoList::push_front(Pos cell) {
    prev_[cell] = 0;
    next_[cell] = head_;
    if (head_ != 0) prev_[head_] = cell; else tail_ = cell;
    head_ = cell;
}

std::vector<Pos> EfoList::positions() const {
    std::vector<Pos> out;
    for (Pos c = head_; c != 0; c = next_[c]) out.push_back(c);
    return out;
}

ParticipationTree::ParticipationTree(const Sequence& s, const SuffixTree& st) {
    const Pos n = s.n();
    const auto N = st.node_count();

    // Per suffix-tree node: contribution cells on the incoming edge, as
    // offsets from the suffix that first computed them.
    std::vector<std::vector<Pos>> rels(N);
    std::vector<Pos> visitor(N, 0);
    std::vector<bool> marked(N, false);

    EfoList efo(s);
    for (Pos i = n;; --i) {
        if (i != n) efo.step();
        // Walk from the suffix's leaf toward the root, consuming list cells
        // backward from tp; stop at the first edge already computed.
        Pos cursor = efo.tp();
        auto cur = st.leaf_for_suffix(i);
        while (cur != SuffixTree::kRoot && !marked[cur]) {
            auto par = st.parent(cur);
            const Pos window_start = i + st.str_depth(par);
            auto& cells = rels[cur];
            while (cursor != 0 && cursor >= window_start) {
                cells.push_back(cursor - i);
                cursor = efo.prev(cursor);
            }
            std::reverse(cells.begin(), cells.end());
            visitor[cur] = i;
            marked[cur] = true;
            cur = par;
        }
        if (i == 1) break;
    }

    // A path's deepest contribution cell never survives: drop the last cell
    // of every edge that has no non-empty contribution strictly below it.
    // Evaluated on the pre-drop state for every edge at once. Node ids are in
    // preorder, so a reverse sweep sees children before parents.
    std::vector<bool> nonempty_below(N, false);
    for (auto v = N; v-- > 1;) {
        auto par = st.parent(v);
        if (!rels[v].empty() || nonempty_below[v]) nonempty_below[par] = true;
    }
    for (SuffixTree::NodeId v = 1; v < N; ++v) {
        if (!rels[v].empty() && !nonempty_below[v]) rels[v].pop_back();
    }

    // Materialize: expand each surviving cell into one node, merge cell-less
    // edges into the parent, and carry leaf attachments onto the images.
    nodes_.clear();
    nodes_.push_back(Node{});
    std::vector<NodeId> image(N, kRoot);
    for (SuffixTree::NodeId v = 1; v < N; ++v) {
        NodeId at = image[st.parent(v)];
        for (Pos rel : rels[v]) {
            at = add_child(at, s.rank_at(visitor[v] + rel), rel);
        }
        image[v] = at;
        if (st.is_leaf(v)) nodes_[at].attached.push_back(st.leaf_suffix(v));
    }
    for (auto& node : nodes_) {
        std::sort(node.attached.begin(), node.attached.end());
    }
}

ParticipationTree::NodeId ParticipationTree::add_child(NodeId at, Rank c,
                                                       Pos rel) {
    Node node;
    node.parent = at;
    node.ch = c;
    node.rel = rel;
    node.depth = nodes_[at].depth + 1;
    nodes_.push_back(std::move(node));
    NodeId id = node_count() - 1;
    nodes_[at].children.emplace_back(c, id);
    return id;
}

std::vector<Pos> ParticipationTree::subtree_attachments(NodeId v) const {
    std::vector<Pos> out;
    std::stack<NodeId> st;
    st.push(v);
    while (!st.empty()) {
        NodeId u = st.top();
        st.pop();
        out.insert(out.end(), nodes_[u].attached.begin(),
                   nodes_[u].attached.end());
        for (auto [c, w] : nodes_[u].children) st.push(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rank> ParticipationTree::path_word(NodeId v) const {
    std::vector<Rank> w;
    for (NodeId u = v; u != kRoot; u = nodes_[u].parent) w.push_back(nodes_[u].ch);
    std::reverse(w.begin(), w.end());
    return w;
}

std::vector<ParticipationTree::RootPath> ParticipationTree::root_paths() const {
    std::vector<RootPath> out;
    out.reserve(node_count() - 1);
    for (NodeId v = 1; v < node_count(); ++v) {
        out.push_back({v, path_word(v), subtree_attachments(v)});
    }
    return out;
}

std::vector<MaximalLocation> ParticipationTree::report(const Sequence& s,
                                                       NodeId v) const {
    if (v == kRoot || v >= node_count())
        throw IndexOutOfRange("report requires a non-root node");
    std::vector<MaximalLocation> out;
    const Pos delta = nodes_[v].rel;
    for (Pos m : subtree_attachments(v)) {
        assert(m + delta <= s.n());
        MaximalLocation loc = extend(s, m, m + delta);
        if (support_of(s, loc.i, loc.j) == m) out.push_back(loc);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string ParticipationTree::to_dot(const Sequence& s,
                                      const Alphabet& a) const {
    std::ostringstream os;
    os << "digraph participation_tree {\n  node [shape=circle];\n";
    for (NodeId v = 0; v < node_count(); ++v) {
        os << "  n" << v << " [label=\"";
        if (v != kRoot) {
            Rank r = nodes_[v].ch;
            os << (r == s.sentinel_rank() ? '#' : a.unrank(r)) << "+"
               << nodes_[v].rel;
        }
        os << "\"];\n";
        if (!nodes_[v].attached.empty()) {
            os << "  s" << v << " [shape=box,label=\"";
            for (std::size_t t = 0; t < nodes_[v].attached.size(); ++t) {
                if (t) os << ",";
                os << nodes_[v].attached[t];
            }
            os << "\"];\n  n" << v << " -> s" << v << " [style=dashed];\n";
        }
        if (v != kRoot) {
            os << "  n" << nodes_[v].parent << " -> n" << v << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace fpindex
