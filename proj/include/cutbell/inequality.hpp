#pragma once

#include <stdexcept>
#include <vector>

#include "cutbell/graph.hpp"
#include "cutbell/rational.hpp"

namespace cutbell {

// Inequality a.x <= rhs over a graph's edge coordinates. Coefficients are
// stored densely in the graph's edge order; zero means the edge is absent
// from the support.
struct CutIneq {
    Graph graph;
    std::vector<Rat> coeffs;
    Rat rhs = 0;

    CutIneq() = default;
    CutIneq(Graph g, std::vector<Rat> c, Rat r) : graph(std::move(g)), coeffs(std::move(c)), rhs(std::move(r)) {
        if (coeffs.size() != static_cast<size_t>(graph.edge_count()))
            throw std::invalid_argument("coefficient count does not match edge count");
    }
    explicit CutIneq(Graph g) : graph(std::move(g)) {
        coeffs.assign(static_cast<size_t>(graph.edge_count()), Rat(0));
    }

    Rat& coeff(int u, int v) { return coeffs[static_cast<size_t>(graph.edge_index(u, v))]; }
    const Rat& coeff(int u, int v) const { return coeffs[static_cast<size_t>(graph.edge_index(u, v))]; }
    Rat& coeff(const NodeId& a, const NodeId& b) { return coeff(graph.node_of(a), graph.node_of(b)); }
    const Rat& coeff(const NodeId& a, const NodeId& b) const { return coeff(graph.node_of(a), graph.node_of(b)); }

    bool is_zero() const {
        for (const Rat& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const CutIneq& o) const {
        return graph == o.graph && coeffs == o.coeffs && rhs == o.rhs;
    }
};

// Inequality in Collins-Gisin correlation coordinates. Orientation is
// fixed: joint[i][j] multiplies q_{A_{i+1} B_{j+1}} (rows = Alice).
struct CgIneq {
    int mA = 0, mB = 0;
    std::vector<Rat> alice_marg;            // length mA
    std::vector<Rat> bob_marg;              // length mB
    std::vector<std::vector<Rat>> joint;    // mA rows of mB
    Rat rhs = 0;

    CgIneq() = default;
    CgIneq(int ma, int mb) : mA(ma), mB(mb) {
        alice_marg.assign(static_cast<size_t>(ma), Rat(0));
        bob_marg.assign(static_cast<size_t>(mb), Rat(0));
        joint.assign(static_cast<size_t>(ma), std::vector<Rat>(static_cast<size_t>(mb), Rat(0)));
    }

    bool operator==(const CgIneq& o) const = default;

    std::vector<Rat> flatten() const {
        std::vector<Rat> v;
        v.reserve(static_cast<size_t>(mA + mB + mA * mB));
        for (const Rat& x : alice_marg) v.push_back(x);
        for (const Rat& x : bob_marg) v.push_back(x);
        for (const auto& row : joint)
            for (const Rat& x : row) v.push_back(x);
        return v;
    }
};

inline Rat evaluate(const CutIneq& f, const Cut& s) {
    if (s.bits >> (f.graph.nA() + f.graph.nB()))
        throw std::invalid_argument("cut contains a node outside the inequality's graph");
    Rat v = 0;
    for (int e = 0; e < f.graph.edge_count(); ++e)
        if (f.coeffs[static_cast<size_t>(e)] != 0 && edge_is_cut(f.graph, s, e))
            v += f.coeffs[static_cast<size_t>(e)];
    return v;
}

// Primitive integer normalization of the full vector (coefficients and rhs
// together); sign preserved, so the inequality is unchanged as a halfspace.
inline CutIneq primitive_normalized(const CutIneq& f, Rat* scale_out = nullptr) {
    std::vector<Rat> v = f.coeffs;
    v.push_back(f.rhs);
    Rat s = primitive_scale(v);
    if (scale_out) *scale_out = s;
    CutIneq out(f.graph);
    for (size_t i = 0; i < f.coeffs.size(); ++i) out.coeffs[i] = f.coeffs[i] * s;
    out.rhs = f.rhs * s;
    return out;
}

inline CgIneq primitive_normalized(const CgIneq& f, Rat* scale_out = nullptr) {
    std::vector<Rat> v = f.flatten();
    v.push_back(f.rhs);
    Rat s = primitive_scale(v);
    if (scale_out) *scale_out = s;
    CgIneq out(f.mA, f.mB);
    for (int i = 0; i < f.mA; ++i) out.alice_marg[static_cast<size_t>(i)] = f.alice_marg[static_cast<size_t>(i)] * s;
    for (int j = 0; j < f.mB; ++j) out.bob_marg[static_cast<size_t>(j)] = f.bob_marg[static_cast<size_t>(j)] * s;
    for (int i = 0; i < f.mA; ++i)
        for (int j = 0; j < f.mB; ++j)
            out.joint[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                f.joint[static_cast<size_t>(i)][static_cast<size_t>(j)] * s;
    out.rhs = f.rhs * s;
    return out;
}

// Affine map from cut coordinates on K_{1,mA,mB} to Collins-Gisin
// coordinates (x_{A_iB_j} = q_{A_i} + q_{B_j} - 2 q_{A_iB_j}), followed by
// primitive integer normalization.
inline CgIneq cut_to_cg(const CutIneq& f) {
    if (f.graph.kind() != GraphKind::tripartite)
        throw std::invalid_argument("cut_to_cg requires a tripartite graph");
    const Graph& g = f.graph;
    CgIneq out(g.nA(), g.nB());
    for (int i = 1; i <= g.nA(); ++i) {
        Rat b = f.coeff(0, g.a_node(i));
        for (int j = 1; j <= g.nB(); ++j) b += f.coeff(g.a_node(i), g.b_node(j));
        out.alice_marg[static_cast<size_t>(i - 1)] = b;
    }
    for (int j = 1; j <= g.nB(); ++j) {
        Rat b = f.coeff(0, g.b_node(j));
        for (int i = 1; i <= g.nA(); ++i) b += f.coeff(g.a_node(i), g.b_node(j));
        out.bob_marg[static_cast<size_t>(j - 1)] = b;
    }
    for (int i = 1; i <= g.nA(); ++i)
        for (int j = 1; j <= g.nB(); ++j)
            out.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
                Rat(-2) * f.coeff(g.a_node(i), g.b_node(j));
    out.rhs = f.rhs;
    return primitive_normalized(out);
}

// Inverse direction (q_{A_iB_j} = (x_{XA_i} + x_{XB_j} - x_{A_iB_j}) / 2),
// again normalized; the round trip returns the input up to positive scaling.
inline CutIneq cg_to_cut(const CgIneq& f) {
    Graph g = build_graph(GraphKind::tripartite, f.mA, f.mB);
    CutIneq out(g);
    for (int i = 1; i <= f.mA; ++i) {
        Rat a = f.alice_marg[static_cast<size_t>(i - 1)];
        for (int j = 1; j <= f.mB; ++j)
            a += f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] / 2;
        out.coeff(0, g.a_node(i)) = a;
    }
    for (int j = 1; j <= f.mB; ++j) {
        Rat a = f.bob_marg[static_cast<size_t>(j - 1)];
        for (int i = 1; i <= f.mA; ++i)
            a += f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] / 2;
        out.coeff(0, g.b_node(j)) = a;
    }
    for (int i = 1; i <= f.mA; ++i)
        for (int j = 1; j <= f.mB; ++j)
            out.coeff(g.a_node(i), g.b_node(j)) =
                -f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] / 2;
    out.rhs = f.rhs;
    return primitive_normalized(out);
}

}  // namespace cutbell
