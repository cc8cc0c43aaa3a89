#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cutbell/analysis.hpp"
#include "cutbell/graph.hpp"
#include "cutbell/hull.hpp"
#include "cutbell/inequality.hpp"
#include "cutbell/symmetry.hpp"

namespace cutbell {

// Add |c| times the triangle inequality on {u, v, helper} oriented so the
// coefficient c of edge uv cancels. The endpoint passed first keeps the
// sign: the result gains c * x_{u,helper} - |c| * x_{v,helper}.
inline CutIneq eliminate_with_triangle(const CutIneq& f, const NodeId& u, const NodeId& v, const NodeId& helper) {
    const Graph& g = f.graph;
    int nu = g.node_of(u), nv = g.node_of(v), nh = g.node_of(helper);
    if (!g.has_edge(nu, nv)) throw std::invalid_argument("no such edge");
    if (!g.has_edge(nu, nh) || !g.has_edge(nv, nh))
        throw std::invalid_argument("helper node not adjacent to both endpoints");
    Rat c = f.coeff(nu, nv);
    if (c == 0) throw std::invalid_argument("edge has zero coefficient; nothing to eliminate");
    CutIneq out = f;
    Rat ac = c < 0 ? -c : c;
    out.coeff(nu, nv) = 0;
    out.coeff(nu, nh) += c;
    out.coeff(nv, nh) -= ac;
    return out;
}

// Triangular elimination: every intra-party term a * x_{A_i A_i'} (i < i')
// is replaced by a * x_{A_i B'} - |a| * x_{A_i' B'} through a fresh node B'
// of the opposite party, and symmetrically for Bob pairs. Fresh nodes are
// appended in lexicographic pair order. Only edges with nonzero
// coefficients spawn fresh nodes; zero_lift recovers the full scenario.
inline CutIneq triangular_eliminate(const CutIneq& f) {
    const Graph& g = f.graph;
    if (g.kind() == GraphKind::tripartite) return f;
    std::vector<std::pair<int, int>> a_pairs, b_pairs;  // 1-based party indices
    for (int i = 1; i <= g.nA(); ++i)
        for (int i2 = i + 1; i2 <= g.nA(); ++i2)
            if (f.coeff(g.a_node(i), g.a_node(i2)) != 0) a_pairs.emplace_back(i, i2);
    for (int j = 1; j <= g.nB(); ++j)
        for (int j2 = j + 1; j2 <= g.nB(); ++j2)
            if (f.coeff(g.b_node(j), g.b_node(j2)) != 0) b_pairs.emplace_back(j, j2);

    Graph g2 = build_graph(GraphKind::tripartite, g.nA() + static_cast<int>(b_pairs.size()),
                           g.nB() + static_cast<int>(a_pairs.size()));
    CutIneq out(g2);
    for (int i = 1; i <= g.nA(); ++i) out.coeff(0, g2.a_node(i)) = f.coeff(0, g.a_node(i));
    for (int j = 1; j <= g.nB(); ++j) out.coeff(0, g2.b_node(j)) = f.coeff(0, g.b_node(j));
    for (int i = 1; i <= g.nA(); ++i)
        for (int j = 1; j <= g.nB(); ++j)
            out.coeff(g2.a_node(i), g2.b_node(j)) = f.coeff(g.a_node(i), g.b_node(j));
    for (std::size_t k = 0; k < a_pairs.size(); ++k) {
        auto [i, i2] = a_pairs[k];
        Rat a = f.coeff(g.a_node(i), g.a_node(i2));
        int bp = g2.b_node(g.nB() + static_cast<int>(k) + 1);
        out.coeff(g2.a_node(i), bp) = a;
        out.coeff(g2.a_node(i2), bp) = a < 0 ? a : -a;
    }
    for (std::size_t k = 0; k < b_pairs.size(); ++k) {
        auto [j, j2] = b_pairs[k];
        Rat a = f.coeff(g.b_node(j), g.b_node(j2));
        int ap = g2.a_node(g.nA() + static_cast<int>(k) + 1);
        out.coeff(ap, g2.b_node(j)) = a;
        out.coeff(ap, g2.b_node(j2)) = a < 0 ? a : -a;
    }
    out.rhs = f.rhs;
    return out;
}

struct CensusOptions {
    bool allow_x_outside = true;   // the designated X node may be a zero node
    bool allow_empty_party = true;  // a labelling may give one party no observables
    bool drop_nonfacets = true;     // drop classes whose elimination is not tight
};

// One labelling of a facet's support nodes as X / Alice / Bob, realized as
// the relabelled inequality itself (complete kind, party-annotated).
struct Labelling {
    CutIneq source;
    bool x_in_support = false;
};

namespace detail {

// All labellings of the support of a (support-reduced) complete-kind
// inequality. The input must have no zero non-X node.
inline std::vector<Labelling> enumerate_labellings(const CutIneq& red, const CensusOptions& opt) {
    const Graph& g = red.graph;
    const int s = g.nA() + g.nB();  // non-X support nodes
    bool x_used = false;
    for (int v = 1; v <= s; ++v)
        if (red.coeff(0, v) != 0) x_used = true;

    std::vector<Labelling> out;
    // relabel: xnode (0 = keep X, else support node index) plus a bitmask
    // assigning the remaining nodes to Alice
    auto emit = [&](int xnode, std::uint64_t amask, bool x_in) {
        std::vector<int> rest;
        for (int v = 0; v <= s; ++v) {
            if (v == xnode) continue;
            if (v == 0 && !x_in) continue;  // old X is dropped when outside support
            rest.push_back(v);
        }
        std::vector<int> a_nodes, b_nodes;
        for (std::size_t t = 0; t < rest.size(); ++t)
            ((amask >> t) & 1u ? a_nodes : b_nodes).push_back(rest[t]);
        if (!opt.allow_empty_party && (a_nodes.empty() || b_nodes.empty())) return;
        Graph g2 = build_graph(GraphKind::complete, static_cast<int>(a_nodes.size()),
                               static_cast<int>(b_nodes.size()));
        std::vector<int> to_new(static_cast<size_t>(s) + 1, -1);
        to_new[static_cast<size_t>(xnode)] = 0;
        for (std::size_t t = 0; t < a_nodes.size(); ++t)
            to_new[static_cast<size_t>(a_nodes[t])] = g2.a_node(static_cast<int>(t) + 1);
        for (std::size_t t = 0; t < b_nodes.size(); ++t)
            to_new[static_cast<size_t>(b_nodes[t])] = g2.b_node(static_cast<int>(t) + 1);
        CutIneq src(g2);
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            if (to_new[static_cast<size_t>(u)] < 0 || to_new[static_cast<size_t>(v)] < 0) {
                if (red.coeffs[static_cast<size_t>(e)] != 0)
                    throw std::logic_error("support node dropped by labelling");
                continue;
            }
            src.coeff(to_new[static_cast<size_t>(u)], to_new[static_cast<size_t>(v)]) =
                red.coeffs[static_cast<size_t>(e)];
        }
        src.rhs = red.rhs;
        out.push_back({std::move(src), x_in});
    };

    if (x_used) {
        // X lies in the support: one support node (possibly the current X)
        // plays X, the rest are observables
        for (int xnode = 0; xnode <= s; ++xnode)
            for (std::uint64_t amask = 0; amask < (std::uint64_t(1) << s); ++amask) emit(xnode, amask, true);
    } else {
        // the current X is a zero node
        for (int xnode = 1; xnode <= s; ++xnode)
            for (std::uint64_t amask = 0; amask < (std::uint64_t(1) << (s - 1)); ++amask) emit(xnode, amask, false);
        if (opt.allow_x_outside)
            for (std::uint64_t amask = 0; amask < (std::uint64_t(1) << s); ++amask) emit(0, amask, true);
        return out;
    }
    if (opt.allow_x_outside) {
        // append a fresh zero X and make every support node an observable
        Graph gx = build_graph(GraphKind::complete, s + 1, 0);
        CutIneq lifted(gx);
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            lifted.coeff(u + 1, v + 1) = red.coeffs[static_cast<size_t>(e)];  // shift: old X becomes node 1
        }
        lifted.rhs = red.rhs;
        // relabel with the fresh X fixed as X
        for (std::uint64_t amask = 0; amask < (std::uint64_t(1) << (s + 1)); ++amask) {
            std::vector<int> a_nodes, b_nodes;
            for (int t = 0; t <= s; ++t) (((amask >> t) & 1u) ? a_nodes : b_nodes).push_back(t + 1);
            if (!opt.allow_empty_party && (a_nodes.empty() || b_nodes.empty())) continue;
            Graph g2 = build_graph(GraphKind::complete, static_cast<int>(a_nodes.size()),
                                   static_cast<int>(b_nodes.size()));
            CutIneq src(g2);
            std::vector<int> map(static_cast<size_t>(s) + 2, -1);
            map[0] = 0;
            for (std::size_t t = 0; t < a_nodes.size(); ++t)
                map[static_cast<size_t>(a_nodes[t])] = g2.a_node(static_cast<int>(t) + 1);
            for (std::size_t t = 0; t < b_nodes.size(); ++t)
                map[static_cast<size_t>(b_nodes[t])] = g2.b_node(static_cast<int>(t) + 1);
            for (int e = 0; e < gx.edge_count(); ++e) {
                auto [u, v] = gx.edges()[static_cast<size_t>(e)];
                src.coeff(map[static_cast<size_t>(u)], map[static_cast<size_t>(v)]) =
                    lifted.coeffs[static_cast<size_t>(e)];
            }
            src.rhs = lifted.rhs;
            out.push_back({std::move(src), false});
        }
    }
    return out;
}

}  // namespace detail

struct CensusClass {
    CutIneq source;       // canonical labelled source (complete kind)
    CutIneq te;           // its triangular elimination
    std::size_t members = 0;  // labelled (facet class, labelling) pairs merged here
    bool te_is_facet = false;
};

struct CensusResult {
    std::vector<CensusClass> classes;  // facet-producing (all, if dropNonFacets off)
    std::vector<CensusClass> dropped;  // classes removed by the tightness filter
};

// Classify, up to party symmetry, the Bell inequalities arising as
// triangular eliminations of the facets of the cut polytope on n nodes.
// Facet class representatives must be supplied (complete kind); sources
// are classified on the cut-polytope side, which induces the same classes
// as classifying the eliminations themselves.
inline CensusResult census_from_classes(const std::vector<CutIneq>& facet_class_reps,
                                        const CensusOptions& opt = {}) {
    std::vector<CutIneq> sources;
    for (const CutIneq& rep : facet_class_reps) {
        SupportReduceResult red = support_reduce(rep);
        if (red.all_zero) continue;
        for (Labelling& lab : detail::enumerate_labellings(red.reduced, opt))
            sources.push_back(std::move(lab.source));
    }
    std::vector<ClassInfo> classes = classify(sources, GroupMode::party);
    CensusResult out;
    for (ClassInfo& cls : classes) {
        CensusClass cc;
        cc.source = cls.representative;
        cc.te = triangular_eliminate(cc.source);
        cc.members = cls.members.size();
        cc.te_is_facet = tightness_report(cc.te).is_facet;
        if (!opt.drop_nonfacets || cc.te_is_facet) out.classes.push_back(std::move(cc));
        else out.dropped.push_back(std::move(cc));
    }
    return out;
}

// Full pipeline: enumerate the cut polytope's facets, classify them, and
// run the census on the class representatives.
inline CensusResult census(int n, const CensusOptions& opt = {}, bool long_running = false) {
    CutFacets cf = cut_polytope_facets(n, long_running);
    std::vector<CutIneq> reps;
    reps.reserve(cf.classes.size());
    for (const ClassInfo& c : cf.classes) reps.push_back(c.representative);
    return census_from_classes(reps, opt);
}

}  // namespace cutbell
