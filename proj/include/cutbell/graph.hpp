#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cutbell/rational.hpp"

namespace cutbell {

enum class Party { X, A, B };

// A node of the scenario graph. X is the single auxiliary node
// (fixed to outcome 0); A_i and B_j are the two parties' observables.
struct NodeId {
    Party party = Party::X;
    int index = 0;  // 1-based within the party; X carries no index

    bool operator==(const NodeId&) const = default;
};

inline std::string node_name(const NodeId& n) {
    switch (n.party) {
        case Party::X: return "X";
        case Party::A: return "A" + std::to_string(n.index);
        case Party::B: return "B" + std::to_string(n.index);
    }
    return "?";
}

enum class GraphKind { complete, tripartite };

// A cut: subset of the non-X nodes, as a bitmask. Bit k corresponds to
// internal node id k+1 (X is node 0 and is never a member).
struct Cut {
    std::uint64_t bits = 0;

    bool operator==(const Cut&) const = default;
    bool contains_node(int node) const { return node > 0 && ((bits >> (node - 1)) & 1u); }
};

// Either the complete graph K_{1+nA+nB} or the complete tripartite graph
// K_{1,nA,nB} over nodes {X, A_1..A_nA, B_1..B_nB}. Internal node ids:
// X = 0, A_i = i, B_j = nA + j. The edge ordering is fixed (X-A, X-B,
// A-B lexicographic, then A-A and B-B blocks for the complete kind) so
// coefficient vectors are comparable and file formats stable.
class Graph {
public:
    Graph() = default;

    GraphKind kind() const { return kind_; }
    int nA() const { return nA_; }
    int nB() const { return nB_; }
    int node_count() const { return 1 + nA_ + nB_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int a_node(int i) const { return i; }            // 1-based i
    int b_node(int j) const { return nA_ + j; }      // 1-based j

    NodeId node_id(int node) const {
        if (node == 0) return {Party::X, 0};
        if (node <= nA_) return {Party::A, node};
        return {Party::B, node - nA_};
    }

    int node_of(const NodeId& id) const {
        switch (id.party) {
            case Party::X: return 0;
            case Party::A:
                if (id.index < 1 || id.index > nA_) throw std::out_of_range("no such A node");
                return id.index;
            case Party::B:
                if (id.index < 1 || id.index > nB_) throw std::out_of_range("no such B node");
                return nA_ + id.index;
        }
        throw std::logic_error("bad party");
    }

    bool has_edge(int u, int v) const { return edge_index_of(u, v) >= 0; }

    int edge_index(int u, int v) const {
        int e = edge_index_of(u, v);
        if (e < 0) throw std::out_of_range("no such edge");
        return e;
    }

    int edge_index_of(int u, int v) const {
        if (u == v || u < 0 || v < 0 || u >= node_count() || v >= node_count()) return -1;
        return lookup_[static_cast<size_t>(u) * node_count() + v];
    }

    std::string edge_name(int e) const {
        auto [u, v] = edges_[static_cast<size_t>(e)];
        return node_name(node_id(u)) + node_name(node_id(v));
    }

    bool operator==(const Graph& o) const {
        return kind_ == o.kind_ && nA_ == o.nA_ && nB_ == o.nB_;
    }
    bool operator!=(const Graph& o) const { return !(*this == o); }

    friend Graph build_graph(GraphKind kind, int nA, int nB);

private:
    GraphKind kind_ = GraphKind::tripartite;
    int nA_ = 0, nB_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> lookup_;  // node*N + node -> edge index or -1

    void add_edge(int u, int v) {
        lookup_[static_cast<size_t>(u) * node_count() + v] = static_cast<int>(edges_.size());
        lookup_[static_cast<size_t>(v) * node_count() + u] = static_cast<int>(edges_.size());
        edges_.emplace_back(u, v);
    }
};

inline Graph build_graph(GraphKind kind, int nA, int nB) {
    if (nA < 0 || nB < 0 || nA + nB < 1)
        throw std::invalid_argument("scenario needs at least one observable");
    Graph g;
    g.kind_ = kind;
    g.nA_ = nA;
    g.nB_ = nB;
    const int n = g.node_count();
    g.lookup_.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 1; i <= nA; ++i) g.add_edge(0, g.a_node(i));
    for (int j = 1; j <= nB; ++j) g.add_edge(0, g.b_node(j));
    for (int i = 1; i <= nA; ++i)
        for (int j = 1; j <= nB; ++j) g.add_edge(g.a_node(i), g.b_node(j));
    if (kind == GraphKind::complete) {
        for (int i = 1; i <= nA; ++i)
            for (int k = i + 1; k <= nA; ++k) g.add_edge(g.a_node(i), g.a_node(k));
        for (int j = 1; j <= nB; ++j)
            for (int l = j + 1; l <= nB; ++l) g.add_edge(g.b_node(j), g.b_node(l));
    }
    return g;
}

// All 2^(nA+nB) cuts in binary counting order; the empty cut comes first.
inline std::vector<Cut> enumerate_cuts(const Graph& g) {
    int k = g.nA() + g.nB();
    if (k > 26) throw std::invalid_argument("cut enumeration beyond 2^26");
    std::vector<Cut> out;
    out.reserve(std::size_t(1) << k);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << k); ++m) out.push_back(Cut{m});
    return out;
}

inline bool edge_is_cut(const Graph& g, const Cut& s, int e) {
    auto [u, v] = g.edges()[static_cast<size_t>(e)];
    return s.contains_node(u) != s.contains_node(v);
}

using EdgeVector = std::vector<Rat>;

inline EdgeVector cut_vector(const Graph& g, const Cut& s) {
    if (s.bits >> (g.nA() + g.nB()))
        throw std::invalid_argument("cut contains a node outside the graph");
    EdgeVector v(static_cast<size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) v[static_cast<size_t>(e)] = edge_is_cut(g, s, e) ? 1 : 0;
    return v;
}

}  // namespace cutbell
