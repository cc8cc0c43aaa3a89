#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cutbell/analysis.hpp"
#include "cutbell/graph.hpp"
#include "cutbell/inequality.hpp"

namespace cutbell {

// full: all node permutations (X may move); only meaningful on complete
// graphs, where it is the symmetry group of the cut polytope.
// party: permutations fix X, permute each party internally, and may swap
// the two parties when their sizes agree. Switchings act in both modes.
enum class GroupMode { full, party };

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Perm = std::vector<int>;  // perm[node] = image node

// Switching by a cut W: negate the coefficient of every edge cut by W and
// move the rhs to a0 - a.delta(W). Involution; maps valid inequalities to
// valid inequalities and facets to facets.
inline CutIneq switch_ineq(const CutIneq& f, const Cut& w0) {
    const int n = f.graph.nA() + f.graph.nB();
    if (w0.bits >> n)
        throw std::invalid_argument("switch set contains a node outside the graph");
    const Cut& w = w0;
    CutIneq out(f.graph);
    Rat shift = 0;
    for (int e = 0; e < f.graph.edge_count(); ++e) {
        if (edge_is_cut(f.graph, w, e)) {
            out.coeffs[static_cast<size_t>(e)] = -f.coeffs[static_cast<size_t>(e)];
            shift += f.coeffs[static_cast<size_t>(e)];
        } else {
            out.coeffs[static_cast<size_t>(e)] = f.coeffs[static_cast<size_t>(e)];
        }
    }
    out.rhs = f.rhs - shift;
    return out;
}

inline bool perm_legal(const Graph& g, const Perm& p, GroupMode mode) {
    const int n = g.node_count();
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int v = 0; v < n; ++v) {
        if (p[static_cast<size_t>(v)] < 0 || p[static_cast<size_t>(v)] >= n) return false;
        if (seen[static_cast<size_t>(p[static_cast<size_t>(v)])]) return false;
        seen[static_cast<size_t>(p[static_cast<size_t>(v)])] = true;
    }
    if (mode == GroupMode::full) return g.kind() == GraphKind::complete;
    if (p[0] != 0) return false;
    // all A nodes must land in one party and all B nodes in the other (or
    // the same); a swap needs equal sizes, which the bijectivity check
    // above already enforces once the blocks are consistent
    auto party_of = [&](int v) { return g.node_id(v).party; };
    Party a_img = g.nA() > 0 ? party_of(p[static_cast<size_t>(g.a_node(1))]) : Party::A;
    Party b_img = g.nB() > 0 ? party_of(p[static_cast<size_t>(g.b_node(1))]) : Party::B;
    for (int i = 1; i <= g.nA(); ++i)
        if (party_of(p[static_cast<size_t>(g.a_node(i))]) != a_img) return false;
    for (int j = 1; j <= g.nB(); ++j)
        if (party_of(p[static_cast<size_t>(g.b_node(j))]) != b_img) return false;
    if (g.nA() > 0 && g.nB() > 0 && a_img == b_img) return false;
    return true;
}

inline CutIneq permute(const CutIneq& f, const Perm& p, GroupMode mode) {
    if (!perm_legal(f.graph, p, mode)) throw std::invalid_argument("illegal permutation for mode");
    CutIneq out(f.graph);
    for (int e = 0; e < f.graph.edge_count(); ++e) {
        auto [u, v] = f.graph.edges()[static_cast<size_t>(e)];
        out.coeffs[static_cast<size_t>(f.graph.edge_index(p[static_cast<size_t>(u)], p[static_cast<size_t>(v)]))] =
            f.coeffs[static_cast<size_t>(e)];
    }
    out.rhs = f.rhs;
    return out;
}

// Swap the two parties: A_i becomes B_i and vice versa; the result lives
// on the (nB, nA) graph of the same kind.
inline CutIneq transpose(const CutIneq& f) {
    const Graph& g = f.graph;
    Graph g2 = build_graph(g.kind(), g.nB(), g.nA());
    auto swap_id = [](NodeId id) {
        if (id.party == Party::A) id.party = Party::B;
        else if (id.party == Party::B) id.party = Party::A;
        return id;
    };
    CutIneq out(g2);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[static_cast<size_t>(e)];
        out.coeff(swap_id(g.node_id(u)), swap_id(g.node_id(v))) = f.coeffs[static_cast<size_t>(e)];
    }
    out.rhs = f.rhs;
    return out;
}

// A group element acts as f -> scale * switch(permute(f, perm), switchSet).
struct GroupElement {
    Perm perm;
    Cut switch_set;
    Rat scale = 1;
};

inline GroupElement identity_element(const Graph& g) {
    GroupElement e;
    e.perm.resize(static_cast<size_t>(g.node_count()));
    std::iota(e.perm.begin(), e.perm.end(), 0);
    return e;
}

inline CutIneq apply(const GroupElement& e, const CutIneq& f, GroupMode mode = GroupMode::full) {
    GroupMode m = (f.graph.kind() == GraphKind::complete) ? mode : GroupMode::party;
    CutIneq out = switch_ineq(permute(f, e.perm, m), e.switch_set);
    if (e.scale != 1) {
        for (Rat& c : out.coeffs) c *= e.scale;
        out.rhs *= e.scale;
    }
    return out;
}

// Image of a cut under a node permutation. If the image contains X (only
// possible in full mode), replace it by its complement, which induces the
// same cut vector.
inline Cut perm_cut(const Graph& g, const Perm& p, const Cut& w) {
    const int k = g.nA() + g.nB();
    std::uint64_t bits = 0;
    bool has_x = false;
    for (int v = 1; v <= k; ++v)
        if (w.contains_node(v)) {
            int img = p[static_cast<size_t>(v)];
            if (img == 0) has_x = true;
            else bits |= std::uint64_t(1) << (img - 1);
        }
    if (has_x) bits = ~bits & ((std::uint64_t(1) << k) - 1);
    return Cut{bits};
}

// compose(e2, e1) acts as first e1, then e2.
inline GroupElement compose(const GroupElement& e2, const GroupElement& e1, const Graph& g) {
    GroupElement out;
    out.perm.resize(e1.perm.size());
    for (size_t v = 0; v < e1.perm.size(); ++v)
        out.perm[v] = e2.perm[static_cast<size_t>(e1.perm[v])];
    out.switch_set = Cut{e2.switch_set.bits ^ perm_cut(g, e2.perm, e1.switch_set).bits};
    out.scale = e1.scale * e2.scale;
    return out;
}

inline GroupElement inverse(const GroupElement& e, const Graph& g) {
    GroupElement out;
    out.perm.resize(e.perm.size());
    for (size_t v = 0; v < e.perm.size(); ++v)
        out.perm[static_cast<size_t>(e.perm[v])] = static_cast<int>(v);
    out.switch_set = perm_cut(g, out.perm, e.switch_set);
    out.scale = Rat(1) / e.scale;
    return out;
}

inline std::vector<Perm> legal_perms(const Graph& g, GroupMode mode) {
    const int n = g.node_count();
    std::vector<Perm> out;
    if (mode == GroupMode::full) {
        if (g.kind() != GraphKind::complete)
            throw std::invalid_argument("full mode applies to complete graphs only");
        Perm p(static_cast<size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do out.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    std::vector<int> pa(static_cast<size_t>(g.nA())), pb(static_cast<size_t>(g.nB()));
    auto emit_block = [&](bool swap) {
        std::iota(pa.begin(), pa.end(), 1);
        do {
            std::iota(pb.begin(), pb.end(), 1);
            do {
                Perm p(static_cast<size_t>(n));
                p[0] = 0;
                for (int i = 1; i <= g.nA(); ++i)
                    p[static_cast<size_t>(g.a_node(i))] =
                        swap ? g.b_node(pa[static_cast<size_t>(i - 1)]) : g.a_node(pa[static_cast<size_t>(i - 1)]);
                for (int j = 1; j <= g.nB(); ++j)
                    p[static_cast<size_t>(g.b_node(j))] =
                        swap ? g.a_node(pb[static_cast<size_t>(j - 1)]) : g.b_node(pb[static_cast<size_t>(j - 1)]);
                out.push_back(std::move(p));
            } while (std::next_permutation(pb.begin(), pb.end()));
        } while (std::next_permutation(pa.begin(), pa.end()));
    };
    emit_block(false);
    if (g.nA() == g.nB() && g.nA() > 0) emit_block(true);
    return out;
}

// Rebuild a complete-kind inequality on the party-free shape (n, 0): same
// node ids, canonical edge order, party labels forgotten.
inline CutIneq forget_parties(const CutIneq& f) {
    if (f.graph.kind() != GraphKind::complete)
        throw std::invalid_argument("only complete graphs can forget party labels");
    Graph g2 = build_graph(GraphKind::complete, f.graph.nA() + f.graph.nB(), 0);
    CutIneq out(g2);
    for (int e = 0; e < g2.edge_count(); ++e) {
        auto [u, v] = g2.edges()[static_cast<size_t>(e)];
        out.coeffs[static_cast<size_t>(e)] = f.coeffs[static_cast<size_t>(f.graph.edge_index(u, v))];
    }
    out.rhs = f.rhs;
    return out;
}

// Canonical key: the lexicographically minimal primitive integer vector
// (coefficients in edge order, then rhs) over the orbit under the chosen
// group together with positive scaling. Equal keys <=> equivalent.
struct CanonKey {
    GraphKind kind = GraphKind::tripartite;
    int nA = 0, nB = 0;
    std::vector<Int> coeffs;
    Int rhs = 0;

    bool operator==(const CanonKey&) const = default;
    bool operator<(const CanonKey& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (nA != o.nA) return nA < o.nA;
        if (nB != o.nB) return nB < o.nB;
        if (coeffs != o.coeffs) return std::lexicographical_compare(coeffs.begin(), coeffs.end(),
                                                                    o.coeffs.begin(), o.coeffs.end());
        return rhs < o.rhs;
    }
};

inline CutIneq key_to_ineq(const CanonKey& k) {
    CutIneq f(build_graph(k.kind, k.nA, k.nB));
    for (size_t i = 0; i < k.coeffs.size(); ++i) f.coeffs[i] = Rat(k.coeffs[i]);
    f.rhs = Rat(k.rhs);
    return f;
}

inline CanonKey canonical_form(const CutIneq& f0, GroupMode mode) {
    CutIneq f = f0;
    if (mode == GroupMode::full) {
        if (f.graph.nA() + f.graph.nB() > 8) throw budget_error("full-mode search beyond 9 nodes");
        f = forget_parties(f);
    } else {
        if (f.graph.nA() > 12 || f.graph.nB() > 12)
            throw budget_error("party-mode search beyond 12 observables per side");
        if (f.graph.nA() < f.graph.nB()) f = transpose(f);  // orient nA >= nB
    }
    const Graph& g = f.graph;
    const int d = g.edge_count();
    const int k = g.nA() + g.nB();

    CanonKey key;
    key.kind = g.kind();
    key.nA = g.nA();
    key.nB = g.nB();

    std::vector<Rat> all = f.coeffs;
    all.push_back(f.rhs);
    std::vector<Int> prim = to_primitive(all);
    Int a0 = prim[static_cast<size_t>(d)];
    prim.resize(static_cast<size_t>(d));
    Int gc = 0;
    for (const Int& c : prim) gc = boost::multiprecision::gcd(gc, boost::multiprecision::abs(c));
    if (gc == 0) {  // zero coefficients: only the rhs sign survives scaling
        key.coeffs.assign(static_cast<size_t>(d), Int(0));
        key.rhs = a0 == 0 ? 0 : (a0 > 0 ? 1 : -1);
        return key;
    }

    // fast integer path; the magnitudes here are tiny in practice
    std::int64_t magnitude = to_int64_checked(boost::multiprecision::abs(a0));
    std::vector<std::int64_t> base(static_cast<size_t>(d));
    for (int e = 0; e < d; ++e) {
        base[static_cast<size_t>(e)] = to_int64_checked(prim[static_cast<size_t>(e)]);
        magnitude += std::abs(base[static_cast<size_t>(e)]);
        if (magnitude > (std::int64_t(1) << 40)) throw std::overflow_error("coefficients too large");
    }
    const std::int64_t a0i = to_int64_checked(a0);
    const std::int64_t gci = to_int64_checked(gc);

    // precompute, per edge, the two endpoint bits (bit 0 stands for X and
    // is always outside W)
    std::vector<std::uint64_t> ebit_u(static_cast<size_t>(d)), ebit_v(static_cast<size_t>(d));
    std::vector<Perm> perms = legal_perms(g, mode);

    std::vector<std::int64_t> pa(static_cast<size_t>(d));
    std::vector<std::int64_t> best(static_cast<size_t>(d));
    std::int64_t best_rhs = 0;
    bool have_best = false;

    for (const Perm& p : perms) {
        for (int e = 0; e < d; ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            pa[static_cast<size_t>(g.edge_index(p[static_cast<size_t>(u)], p[static_cast<size_t>(v)]))] =
                base[static_cast<size_t>(e)];
        }
        for (int e = 0; e < d; ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            ebit_u[static_cast<size_t>(e)] = (u == 0) ? 0 : (std::uint64_t(1) << (u - 1));
            ebit_v[static_cast<size_t>(e)] = (v == 0) ? 0 : (std::uint64_t(1) << (v - 1));
        }
        for (std::uint64_t w = 0; w < (std::uint64_t(1) << k); ++w) {
            std::int64_t rhs_w = a0i;
            for (int e = 0; e < d; ++e) {
                bool cut = ((w & ebit_u[static_cast<size_t>(e)]) != 0) != ((w & ebit_v[static_cast<size_t>(e)]) != 0);
                if (cut) rhs_w -= pa[static_cast<size_t>(e)];
            }
            std::int64_t div = std::gcd(gci, std::abs(rhs_w));
            if (div == 0) div = 1;
            // lexicographic comparison with early exit
            int cmp = 0;
            for (int e = 0; e < d && cmp == 0; ++e) {
                bool cut = ((w & ebit_u[static_cast<size_t>(e)]) != 0) != ((w & ebit_v[static_cast<size_t>(e)]) != 0);
                std::int64_t c = (cut ? -pa[static_cast<size_t>(e)] : pa[static_cast<size_t>(e)]) / div;
                if (!have_best) { best[static_cast<size_t>(e)] = c; continue; }
                if (c < best[static_cast<size_t>(e)]) cmp = -1;
                else if (c > best[static_cast<size_t>(e)]) cmp = 1;
            }
            if (!have_best) {
                best_rhs = rhs_w / div;
                have_best = true;
                continue;
            }
            if (cmp == 1) continue;
            if (cmp == 0 && rhs_w / div >= best_rhs) continue;
            for (int e = 0; e < d; ++e) {
                bool cut = ((w & ebit_u[static_cast<size_t>(e)]) != 0) != ((w & ebit_v[static_cast<size_t>(e)]) != 0);
                best[static_cast<size_t>(e)] = (cut ? -pa[static_cast<size_t>(e)] : pa[static_cast<size_t>(e)]) / div;
            }
            best_rhs = rhs_w / div;
        }
    }
    key.coeffs.assign(best.begin(), best.end());
    key.rhs = best_rhs;
    return key;
}

inline CutIneq canonical_ineq(const CutIneq& f, GroupMode mode) {
    return key_to_ineq(canonical_form(f, mode));
}

// Certificate that some legal (permutation, switching, positive scaling)
// maps the support-reduced source to the support-reduced target. When
// `transposed` is set, the source is party-swapped (transpose()) first.
struct EquivCertificate {
    GroupElement element;
    bool transposed = false;
};

namespace detail {

// Search on a common graph: find e with apply(e, f) == g. Both inputs must
// be on the same graph.
inline std::optional<GroupElement> match_on_graph(const CutIneq& f, const CutIneq& t, GroupMode mode) {
    const Graph& g = f.graph;
    const int d = g.edge_count();
    Rat sf, st;
    CutIneq pf = primitive_normalized(f, &sf);
    CutIneq pt = primitive_normalized(t, &st);
    Int gcf = 0, gct = 0;
    for (int e = 0; e < d; ++e) {
        gcf = boost::multiprecision::gcd(gcf, boost::multiprecision::abs(rat_num(pf.coeffs[static_cast<size_t>(e)])));
        gct = boost::multiprecision::gcd(gct, boost::multiprecision::abs(rat_num(pt.coeffs[static_cast<size_t>(e)])));
    }
    if ((gcf == 0) != (gct == 0)) return std::nullopt;
    if (gcf == 0) {  // both zero: scaling on the rhs alone
        if (pf.rhs == 0 && pt.rhs == 0) {
            GroupElement e = identity_element(g);
            e.scale = st == 0 ? Rat(1) : sf / st;
            return e;
        }
        if (pf.rhs != 0 && pt.rhs != 0 && (pf.rhs > 0) == (pt.rhs > 0)) {
            GroupElement e = identity_element(g);
            e.scale = (pt.rhs / pf.rhs) * sf / st;
            return e;
        }
        return std::nullopt;
    }
    const Rat lambda = Rat(gct) / Rat(gcf);  // forced coefficient scale
    const int n = g.node_count();
    std::vector<Rat> pa(static_cast<size_t>(d));
    auto abs_r = [](const Rat& r) { return boost::multiprecision::abs(r); };

    // Full assignment candidate: solve the sign pattern as a switching and
    // verify by application.
    auto try_perm = [&](const Perm& p) -> std::optional<GroupElement> {
        for (int e = 0; e < d; ++e) {
            auto [u, v] = g.edges()[static_cast<size_t>(e)];
            pa[static_cast<size_t>(g.edge_index(p[static_cast<size_t>(u)], p[static_cast<size_t>(v)]))] =
                pf.coeffs[static_cast<size_t>(e)];
        }
        // solve the sign pattern as a switching: x_u xor x_v = [signs differ]
        std::vector<int> x(static_cast<size_t>(n), -1);
        x[0] = 0;  // X never belongs to a switch set
        bool ok = true;
        for (int pass = 0; pass < n && ok; ++pass) {
            bool progress = false;
            for (int e = 0; e < d && ok; ++e) {
                if (pa[static_cast<size_t>(e)] == 0) continue;
                auto [u, v] = g.edges()[static_cast<size_t>(e)];
                int need = ((pa[static_cast<size_t>(e)] > 0) != (pt.coeffs[static_cast<size_t>(e)] > 0)) ? 1 : 0;
                int& xu = x[static_cast<size_t>(u)];
                int& xv = x[static_cast<size_t>(v)];
                if (xu >= 0 && xv >= 0) {
                    if ((xu ^ xv) != need) ok = false;
                } else if (xu >= 0) {
                    xv = xu ^ need;
                    progress = true;
                } else if (xv >= 0) {
                    xu = xv ^ need;
                    progress = true;
                }
            }
            if (!progress) {
                // anchor one node of an unresolved support component; the
                // choice does not affect the switched inequality's rhs
                int anchor = -1;
                for (int e = 0; e < d && anchor < 0; ++e) {
                    if (pa[static_cast<size_t>(e)] == 0) continue;
                    auto [u, v] = g.edges()[static_cast<size_t>(e)];
                    if (x[static_cast<size_t>(u)] < 0) anchor = u;
                    else if (x[static_cast<size_t>(v)] < 0) anchor = v;
                }
                if (anchor < 0) break;
                x[static_cast<size_t>(anchor)] = 0;
            }
        }
        if (!ok) return std::nullopt;
        std::uint64_t wbits = 0;
        for (int v = 1; v < n; ++v)
            if (x[static_cast<size_t>(v)] == 1) wbits |= std::uint64_t(1) << (v - 1);
        GroupElement e{p, Cut{wbits}, lambda * sf / st};
        if (apply(e, f, mode) == t) return e;
        return std::nullopt;
    };

    // Backtracking over node images instead of enumerating every legal
    // permutation: prune with per-node magnitude signatures (sorted |coeff|
    // multisets to X / Alice / Bob) and incremental pairwise checks.
    auto node_class = [&](int v) { return v == 0 ? 0 : (g.node_id(v).party == Party::A ? 1 : 2); };
    auto signature = [&](const CutIneq& q, int u, bool scaled) {
        std::array<std::vector<Rat>, 3> s;
        for (int v = 0; v < n; ++v) {
            if (v == u || !g.has_edge(u, v)) continue;
            Rat a = abs_r(q.coeff(u, v));
            if (scaled) a *= lambda;
            s[static_cast<size_t>(node_class(v))].push_back(a);
        }
        for (auto& vec : s) std::sort(vec.begin(), vec.end());
        return s;
    };
    std::vector<std::array<std::vector<Rat>, 3>> sig_f(static_cast<size_t>(n)),
        sig_t(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        sig_f[static_cast<size_t>(v)] = signature(pf, v, true);
        sig_t[static_cast<size_t>(v)] = signature(pt, v, false);
    }

    auto run = [&](bool swap) -> std::optional<GroupElement> {
        auto sig_match = [&](int u, int c) {
            const auto& a = sig_f[static_cast<size_t>(u)];
            const auto& b = sig_t[static_cast<size_t>(c)];
            if (mode == GroupMode::full) {
                std::vector<Rat> ma, mb;
                for (int k2 = 0; k2 < 3; ++k2) {
                    ma.insert(ma.end(), a[static_cast<size_t>(k2)].begin(), a[static_cast<size_t>(k2)].end());
                    mb.insert(mb.end(), b[static_cast<size_t>(k2)].begin(), b[static_cast<size_t>(k2)].end());
                }
                std::sort(ma.begin(), ma.end());
                std::sort(mb.begin(), mb.end());
                return ma == mb;
            }
            return a[0] == b[0] && a[1] == b[static_cast<size_t>(swap ? 2 : 1)] &&
                   a[2] == b[static_cast<size_t>(swap ? 1 : 2)];
        };
        std::vector<std::vector<int>> cand(static_cast<size_t>(n));
        for (int u = 0; u < n; ++u) {
            for (int c = 0; c < n; ++c) {
                if (mode == GroupMode::party) {
                    int cu = node_class(u), cc = node_class(c);
                    int want = cu == 0 ? 0 : (swap ? 3 - cu : cu);
                    if (cc != want) continue;
                }
                if (sig_match(u, c)) cand[static_cast<size_t>(u)].push_back(c);
            }
            if (cand[static_cast<size_t>(u)].empty()) return std::nullopt;
        }
        std::vector<int> order(static_cast<size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return cand[static_cast<size_t>(a)].size() < cand[static_cast<size_t>(b)].size();
        });
        Perm p(static_cast<size_t>(n), -1);
        std::vector<char> used(static_cast<size_t>(n), 0);
        std::function<std::optional<GroupElement>(int)> rec =
            [&](int idx) -> std::optional<GroupElement> {
            if (idx == n) return try_perm(p);
            int u = order[static_cast<size_t>(idx)];
            for (int c : cand[static_cast<size_t>(u)]) {
                if (used[static_cast<size_t>(c)]) continue;
                bool ok2 = true;
                for (int j = 0; j < idx && ok2; ++j) {
                    int w = order[static_cast<size_t>(j)];
                    bool ef = g.has_edge(u, w);
                    bool et = g.has_edge(c, p[static_cast<size_t>(w)]);
                    if (ef != et) {
                        ok2 = false;
                    } else if (ef && abs_r(pf.coeff(u, w)) * lambda !=
                                         abs_r(pt.coeff(c, p[static_cast<size_t>(w)]))) {
                        ok2 = false;
                    }
                }
                if (!ok2) continue;
                used[static_cast<size_t>(c)] = 1;
                p[static_cast<size_t>(u)] = c;
                if (auto r = rec(idx + 1)) return r;
                used[static_cast<size_t>(c)] = 0;
                p[static_cast<size_t>(u)] = -1;
            }
            return std::nullopt;
        };
        return rec(0);
    };

    if (auto r = run(false)) return r;
    if (mode == GroupMode::party && g.nA() == g.nB() && g.nA() > 0)
        if (auto r = run(true)) return r;
    return std::nullopt;
}

}  // namespace detail

// Equivalence test. Both inputs are support-reduced first; the certificate
// maps the reduced source (transposed first if flagged) to the reduced
// target exactly.
inline std::optional<EquivCertificate> equivalent(const CutIneq& f, const CutIneq& t, GroupMode mode) {
    if (mode == GroupMode::full) {
        if (f.graph.kind() != GraphKind::complete || t.graph.kind() != GraphKind::complete) return std::nullopt;
        if (f.graph.nA() + f.graph.nB() != t.graph.nA() + t.graph.nB()) return std::nullopt;
        auto e = detail::match_on_graph(forget_parties(f), forget_parties(t), GroupMode::full);
        if (!e) return std::nullopt;
        return EquivCertificate{*e, false};
    }
    SupportReduceResult rf = support_reduce(f);
    SupportReduceResult rt = support_reduce(t);
    if (rf.reduced.graph.kind() != rt.reduced.graph.kind()) return std::nullopt;
    if (rf.reduced.graph == rt.reduced.graph) {
        if (auto e = detail::match_on_graph(rf.reduced, rt.reduced, GroupMode::party))
            return EquivCertificate{*e, false};
    }
    CutIneq ft = transpose(rf.reduced);
    if (ft.graph == rt.reduced.graph && !(rf.reduced.graph == rt.reduced.graph)) {
        if (auto e = detail::match_on_graph(ft, rt.reduced, GroupMode::party))
            return EquivCertificate{*e, true};
    }
    return std::nullopt;
}

struct ClassInfo {
    CutIneq representative;           // canonical form of the class
    std::vector<std::size_t> members;  // indices into the classified list
};

// Partition a list by canonical key; classes are ordered by key, so output
// is deterministic and independent of input order up to member indices.
inline std::vector<ClassInfo> classify(const std::vector<CutIneq>& list, GroupMode mode) {
    std::map<CanonKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < list.size(); ++i) groups[canonical_form(list[i], mode)].push_back(i);
    std::vector<ClassInfo> out;
    out.reserve(groups.size());
    for (auto& [key, members] : groups) out.push_back({key_to_ineq(key), std::move(members)});
    return out;
}

}  // namespace cutbell
