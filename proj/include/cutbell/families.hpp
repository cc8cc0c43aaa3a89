#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cutbell/elimination.hpp"
#include "cutbell/graph.hpp"
#include "cutbell/inequality.hpp"
#include "cutbell/symmetry.hpp"

namespace cutbell {

// Integer weights for a hypermetric inequality; the X weight is derived so
// all weights sum to 1.
struct WeightVector {
    std::vector<long long> bA;
    std::vector<long long> bB;

    long long bX() const {
        long long s = 1;
        for (long long b : bA) s -= b;
        for (long long b : bB) s -= b;
        return s;
    }
};

// Hypermetric inequality sum b_u b_v x_uv <= 0 on the complete graph over
// X, A_1..A_s, B_1..B_t.
inline CutIneq hypermetric(const WeightVector& b) {
    const int s = static_cast<int>(b.bA.size());
    const int t = static_cast<int>(b.bB.size());
    Graph g = build_graph(GraphKind::complete, s, t);
    auto weight = [&](int node) -> long long {
        if (node == 0) return b.bX();
        if (node <= s) return b.bA[static_cast<size_t>(node - 1)];
        return b.bB[static_cast<size_t>(node - s - 1)];
    };
    CutIneq f(g);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[static_cast<size_t>(e)];
        f.coeffs[static_cast<size_t>(e)] = Rat(weight(u)) * Rat(weight(v));
    }
    f.rhs = 0;
    return f;
}

namespace detail {

inline void require_positives_first(const std::vector<long long>& v, const char* who) {
    bool seen_nonpos = false;
    for (long long b : v) {
        if (b > 0 && seen_nonpos)
            throw std::invalid_argument(std::string(who) +
                                        " weights must list the positive entries first");
        if (b <= 0) seen_nonpos = true;
    }
}

}  // namespace detail

// Closed-form Bell inequality obtained by eliminating a hypermetric
// inequality. Weights must be ordered positives-first within each party.
// Equals the elimination pipeline's output up to positive scaling; fresh
// observables follow the same lexicographic pair order the pipeline uses.
inline CgIneq hypermetric_bell(const WeightVector& b) {
    detail::require_positives_first(b.bA, "Alice");
    detail::require_positives_first(b.bB, "Bob");
    const int s = static_cast<int>(b.bA.size());
    const int t = static_cast<int>(b.bB.size());
    int sp = 0, tp = 0;
    while (sp < s && b.bA[static_cast<size_t>(sp)] > 0) ++sp;
    while (tp < t && b.bB[static_cast<size_t>(tp)] > 0) ++tp;

    std::vector<std::pair<int, int>> a_pairs, b_pairs;  // nonzero intra pairs, 1-based
    for (int i = 1; i <= s; ++i)
        for (int i2 = i + 1; i2 <= s; ++i2)
            if (b.bA[static_cast<size_t>(i - 1)] * b.bA[static_cast<size_t>(i2 - 1)] != 0)
                a_pairs.emplace_back(i, i2);
    for (int j = 1; j <= t; ++j)
        for (int j2 = j + 1; j2 <= t; ++j2)
            if (b.bB[static_cast<size_t>(j - 1)] * b.bB[static_cast<size_t>(j2 - 1)] != 0)
                b_pairs.emplace_back(j, j2);

    CgIneq out(s + static_cast<int>(b_pairs.size()), t + static_cast<int>(a_pairs.size()));
    auto ba = [&](int i) { return Rat(b.bA[static_cast<size_t>(i - 1)]); };
    auto bb = [&](int j) { return Rat(b.bB[static_cast<size_t>(j - 1)]); };

    for (int i = 1; i <= s; ++i) {
        Rat prev = 0;
        int lo = (i <= sp) ? 1 : sp + 1;
        for (int i2 = lo; i2 < i; ++i2) prev += ba(i2);
        out.alice_marg[static_cast<size_t>(i - 1)] = ba(i) * ((1 - ba(i)) / 2 - prev);
    }
    for (int j = 1; j <= t; ++j) {
        Rat prev = 0;
        int lo = (j <= tp) ? 1 : tp + 1;
        for (int j2 = lo; j2 < j; ++j2) prev += bb(j2);
        out.bob_marg[static_cast<size_t>(j - 1)] = bb(j) * ((1 - bb(j)) / 2 - prev);
    }
    for (std::size_t k = 0; k < b_pairs.size(); ++k) {
        auto [j, j2] = b_pairs[k];
        int ai = s + static_cast<int>(k) + 1;  // fresh Alice observable A'_{jj'}
        if (j <= tp && j2 > tp) out.alice_marg[static_cast<size_t>(ai - 1)] = bb(j) * bb(j2);
        out.joint[static_cast<size_t>(ai - 1)][static_cast<size_t>(j - 1)] = -bb(j) * bb(j2);
        Rat a = bb(j) * bb(j2);
        out.joint[static_cast<size_t>(ai - 1)][static_cast<size_t>(j2 - 1)] = a < 0 ? -a : a;
    }
    for (std::size_t k = 0; k < a_pairs.size(); ++k) {
        auto [i, i2] = a_pairs[k];
        int bj = t + static_cast<int>(k) + 1;  // fresh Bob observable B'_{ii'}
        if (i <= sp && i2 > sp) out.bob_marg[static_cast<size_t>(bj - 1)] = ba(i) * ba(i2);
        out.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(bj - 1)] = -ba(i) * ba(i2);
        Rat a = ba(i) * ba(i2);
        out.joint[static_cast<size_t>(i2 - 1)][static_cast<size_t>(bj - 1)] = a < 0 ? -a : a;
    }
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= t; ++j)
            out.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = -ba(i) * bb(j);
    out.rhs = 0;
    return out;
}

// Pure case: Alice weights all 1, Bob weights 1 (l - s times) then -1, and
// the X weight 1 - 2l + s + t. The weight list is pure (all entries in
// {1, -1, 0} with the counts differing by one) when s + t is 2l or 2l + 1;
// the inequality is tight for l > 1, and l = 1 gives the trivial
// (l, s, t) = (1, 1, 1) and CHSH (1, 1, 2) inequalities.
inline CgIneq pure_hypermetric_bell(int l, int s, int t) {
    if (s < 0 || s > l || t < l - s || (s + t != 2 * l && s + t != 2 * l + 1))
        throw std::invalid_argument(
            "pure hypermetric parameters need 0 <= s <= l, t >= l - s, s + t in {2l, 2l + 1}");
    WeightVector b;
    b.bA.assign(static_cast<size_t>(s), 1);
    b.bB.assign(static_cast<size_t>(t), -1);
    // s + t = 2l gives bX = 1; s + t = 2l + 1 needs one more +1 so bX = 0
    const int ones = l - s + (s + t == 2 * l + 1 ? 1 : 0);
    for (int j = 0; j < ones; ++j) b.bB[static_cast<size_t>(j)] = 1;
    return hypermetric_bell(b);
}

// Which sufficient tightness condition the full weight list (including the
// X weight) satisfies.
struct HypermetricCondition {
    enum class Kind { pure, negative_tail, none } kind = Kind::none;
    int l = 0;  // for pure: l+1 ones and l minus-ones
};

inline HypermetricCondition hypermetric_tightness_condition(const WeightVector& b) {
    std::vector<long long> all(b.bA);
    all.insert(all.end(), b.bB.begin(), b.bB.end());
    all.push_back(b.bX());
    const int n = static_cast<int>(all.size());
    int ones = 0, minus = 0, zeros = 0, positive = 0, minus_only = 0;
    bool others_minus_one = true;
    for (long long v : all) {
        if (v == 1) ++ones;
        if (v == -1) ++minus;
        if (v == 0) ++zeros;
        if (v > 0) ++positive;
        else if (v == -1) ++minus_only;
        else others_minus_one = false;
    }
    if (ones + minus + zeros == n && ones == minus + 1 && minus > 1)
        return {HypermetricCondition::Kind::pure, minus};
    if (others_minus_one && positive >= 3 && positive <= n - 3)
        return {HypermetricCondition::Kind::negative_tail, 0};
    return {HypermetricCondition::Kind::none, 0};
}

struct CliqueWebParams {
    int s = 2, t = 2, r = 0;
};

// Bell inequality derived from the pure clique-web inequality with
// parameters n = s+t+1, p = s+1, q = t. Alice-pair fresh observables exist
// for pairs i < i' with r+1 <= i'-i <= s-r (the clique-web's antiweb
// zeroes out the remaining intra pairs).
inline CgIneq cliqueweb_bell(const CliqueWebParams& p) {
    if (p.s < 0 || p.t < 2 || p.r < 0 || p.s < p.t || p.s - p.t != 2 * p.r)
        throw std::invalid_argument("clique-web parameters need s >= t >= 2 and s - t = 2r");
    const int s = p.s, t = p.t, r = p.r;
    std::vector<std::pair<int, int>> a_pairs;
    for (int i = 1; i <= s; ++i)
        for (int i2 = i + 1; i2 <= s; ++i2)
            if (i2 - i >= r + 1 && i2 - i <= s - r) a_pairs.emplace_back(i, i2);
    std::vector<std::pair<int, int>> b_pairs;
    for (int j = 1; j <= t; ++j)
        for (int j2 = j + 1; j2 <= t; ++j2) b_pairs.emplace_back(j, j2);

    CgIneq out(s + static_cast<int>(b_pairs.size()), t + static_cast<int>(a_pairs.size()));
    for (int i = r + 1; i <= s - r; ++i) out.alice_marg[static_cast<size_t>(i - 1)] = -(i - r - 1);
    for (int i = s - r + 1; i <= s; ++i) out.alice_marg[static_cast<size_t>(i - 1)] = -t;
    for (int j = 1; j <= t; ++j) out.bob_marg[static_cast<size_t>(j - 1)] = -(j + r);
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= t; ++j) out.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = 1;
    for (std::size_t k = 0; k < a_pairs.size(); ++k) {
        auto [i, i2] = a_pairs[k];
        int bj = t + static_cast<int>(k) + 1;
        out.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(bj - 1)] = -1;
        out.joint[static_cast<size_t>(i2 - 1)][static_cast<size_t>(bj - 1)] = 1;
    }
    for (std::size_t k = 0; k < b_pairs.size(); ++k) {
        auto [j, j2] = b_pairs[k];
        int ai = s + static_cast<int>(k) + 1;
        out.joint[static_cast<size_t>(ai - 1)][static_cast<size_t>(j - 1)] = -1;
        out.joint[static_cast<size_t>(ai - 1)][static_cast<size_t>(j2 - 1)] = 1;
    }
    out.rhs = 0;
    return out;
}

// The I_mm22 family: Alice marginals (-1, 0, ..., 0), Bob marginals
// (-(m-1), ..., -1, 0), joint 1 where i + j <= m + 1, -1 where
// i + j = m + 2, 0 elsewhere. m = 2 is CHSH, m = 3 is I_3322.
inline CgIneq immm22(int m) {
    if (m < 2) throw std::invalid_argument("immm22 requires m >= 2");
    CgIneq out(m, m);
    out.alice_marg[0] = -1;
    for (int j = 1; j <= m; ++j) out.bob_marg[static_cast<size_t>(j - 1)] = -(m - j);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Rat v = 0;
            if (i + j <= m + 1) v = 1;
            else if (i + j == m + 2) v = -1;
            out.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = v;
        }
    out.rhs = 0;
    return out;
}

// Named inequalities as published; exactly one representation is set.
struct CatalogEntry {
    std::string name;
    std::optional<CutIneq> cut;
    std::optional<CgIneq> cg;
};

inline CatalogEntry catalog(const std::string& name) {
    auto cg_entry = [&](int mA, int mB, std::vector<Rat> am, std::vector<Rat> bm,
                        std::vector<std::vector<Rat>> joint, Rat rhs) {
        CgIneq f(mA, mB);
        f.alice_marg = std::move(am);
        f.bob_marg = std::move(bm);
        f.joint = std::move(joint);
        f.rhs = std::move(rhs);
        return CatalogEntry{name, std::nullopt, std::move(f)};
    };
    if (name == "chsh")
        return cg_entry(2, 2, {-1, 0}, {-1, 0}, {{1, 1}, {1, -1}}, 0);
    if (name == "i3322")
        return cg_entry(3, 3, {-1, 0, 0}, {-2, -1, 0}, {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}}, 0);
    if (name == "positive_probability")
        return cg_entry(1, 1, {0}, {0}, {{-1}}, 0);
    if (name == "i3422_1")
        return cg_entry(3, 4, {1, 1, -2}, {1, 0, 0, 1},
                        {{-1, -1, 1, -1}, {-1, 1, -1, -1}, {1, 1, 1, -1}}, 2);
    if (name == "i3422_2")  // columns as displayed: B2, switched B3, B1
        return cg_entry(4, 3, {-1, 0, -1, 1}, {0, 1, -1},
                        {{-1, 1, 1}, {0, -1, 1}, {1, 0, 1}, {-1, -1, 0}}, 1);
    if (name == "i3422_3")
        return cg_entry(3, 4, {1, 0, -1}, {0, 0, -1, 2},
                        {{-2, 0, 1, -1}, {1, -1, 1, -1}, {1, 1, 1, -1}}, 2);
    if (name == "triangle") {
        // the labelled triangle whose elimination is the CHSH inequality:
        // x_{A1A2} - x_{A1B1} - x_{A2B1} <= 0 (X outside the support)
        Graph g = build_graph(GraphKind::complete, 2, 1);
        CutIneq f(g);
        f.coeff(g.a_node(1), g.a_node(2)) = 1;
        f.coeff(g.a_node(1), g.b_node(1)) = -1;
        f.coeff(g.a_node(2), g.b_node(1)) = -1;
        f.rhs = 0;
        return {name, std::move(f), std::nullopt};
    }
    if (name == "pentagonal") {
        Graph g = build_graph(GraphKind::complete, 2, 2);
        CutIneq f(g);
        f.coeff(0, g.a_node(1)) = 1;
        f.coeff(0, g.a_node(2)) = 1;
        f.coeff(0, g.b_node(1)) = -1;
        f.coeff(0, g.b_node(2)) = -1;
        f.coeff(g.a_node(1), g.a_node(2)) = 1;
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) f.coeff(g.a_node(i), g.b_node(j)) = -1;
        f.coeff(g.b_node(1), g.b_node(2)) = 1;
        f.rhs = 0;
        return {name, std::move(f), std::nullopt};
    }
    if (name == "grishukhin") {
        // vertices 1..6 -> A1..A6, vertex 7 -> X
        Graph g = build_graph(GraphKind::complete, 6, 0);
        CutIneq f(g);
        auto node = [&](int v) { return v == 7 ? 0 : g.a_node(v); };
        auto set = [&](int u, int v, Rat c) { f.coeff(node(u), node(v)) = std::move(c); };
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) set(i, j, 1);
        set(5, 6, 1);
        set(5, 7, 1);
        set(6, 7, -1);
        set(1, 6, -1);
        set(3, 6, -1);
        set(2, 7, -1);
        set(4, 7, -1);
        for (int i = 1; i <= 4; ++i) set(i, 5, -2);
        f.rhs = 0;
        return {name, std::move(f), std::nullopt};
    }
    throw std::invalid_argument("unknown catalog name: " + name);
}

// Fix one observable to a deterministic outcome and drop it. Value 0 makes
// the observable's probabilities vanish; value 1 turns each joint term
// into the partner's marginal and the marginal into a constant.
inline CgIneq fix_observable(const CgIneq& f, const NodeId& node, int value) {
    if (value != 0 && value != 1) throw std::invalid_argument("value must be 0 or 1");
    if (node.party == Party::X) throw std::invalid_argument("cannot fix the auxiliary node");
    bool alice = node.party == Party::A;
    int idx = node.index;
    if (idx < 1 || idx > (alice ? f.mA : f.mB)) throw std::invalid_argument("no such observable");
    CgIneq out(alice ? f.mA - 1 : f.mA, alice ? f.mB : f.mB - 1);
    out.rhs = f.rhs;
    if (value == 1) {
        if (alice) {
            out.rhs -= f.alice_marg[static_cast<size_t>(idx - 1)];
        } else {
            out.rhs -= f.bob_marg[static_cast<size_t>(idx - 1)];
        }
    }
    int ai = 0;
    for (int i = 1; i <= f.mA; ++i) {
        if (alice && i == idx) continue;
        Rat m = f.alice_marg[static_cast<size_t>(i - 1)];
        if (!alice && value == 1) m += f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(idx - 1)];
        out.alice_marg[static_cast<size_t>(ai)] = m;
        int bj = 0;
        for (int j = 1; j <= f.mB; ++j) {
            if (!alice && j == idx) continue;
            out.joint[static_cast<size_t>(ai)][static_cast<size_t>(bj)] =
                f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
            ++bj;
        }
        ++ai;
    }
    int bj = 0;
    for (int j = 1; j <= f.mB; ++j) {
        if (!alice && j == idx) continue;
        Rat m = f.bob_marg[static_cast<size_t>(j - 1)];
        if (alice && value == 1) m += f.joint[static_cast<size_t>(idx - 1)][static_cast<size_t>(j - 1)];
        out.bob_marg[static_cast<size_t>(bj)] = m;
        ++bj;
    }
    return out;
}

// Search for a set of deterministic fixings reducing the inequality to the
// CHSH inequality (up to party symmetry).
struct ChshInclusion {
    std::vector<std::pair<NodeId, int>> fixing;  // (observable, fixed value)
    std::array<NodeId, 2> alice_kept{};
    std::array<NodeId, 2> bob_kept{};
};

enum class ChshStatus { found, none, unknown };

struct ChshResult {
    ChshStatus status = ChshStatus::none;
    std::optional<ChshInclusion> witness;
};

inline ChshResult includes_chsh(const CgIneq& f, int exhaustive_limit = 12) {
    if (f.mA < 2 || f.mB < 2) return {ChshStatus::none, std::nullopt};
    const bool exhaustive = f.mA + f.mB <= exhaustive_limit;
    CutIneq chsh = cg_to_cut(catalog("chsh").cg.value());

    std::vector<int> akeep, bkeep;
    ChshResult res;
    res.status = exhaustive ? ChshStatus::none : ChshStatus::unknown;
    for (int a1 = 1; a1 <= f.mA; ++a1)
        for (int a2 = a1 + 1; a2 <= f.mA; ++a2)
            for (int b1 = 1; b1 <= f.mB; ++b1)
                for (int b2 = b1 + 1; b2 <= f.mB; ++b2) {
                    std::vector<NodeId> fixed;
                    for (int i = 1; i <= f.mA; ++i)
                        if (i != a1 && i != a2) fixed.push_back({Party::A, i});
                    for (int j = 1; j <= f.mB; ++j)
                        if (j != b1 && j != b2) fixed.push_back({Party::B, j});
                    const std::size_t nfix = fixed.size();
                    const std::uint64_t limit = exhaustive ? (std::uint64_t(1) << nfix) : 1;
                    // all-zero fixing first (the proofs' fast path)
                    for (std::uint64_t vals = 0; vals < limit; ++vals) {
                        CgIneq red = f;
                        std::vector<std::pair<NodeId, int>> fixing;
                        // fix from the highest index down so indices stay valid
                        for (std::size_t k = nfix; k-- > 0;) {
                            int v = static_cast<int>((vals >> k) & 1u);
                            fixing.emplace_back(fixed[k], v);
                            red = fix_observable(red, fixed[k], v);
                        }
                        if (equivalent(cg_to_cut(red), chsh, GroupMode::party)) {
                            ChshInclusion w;
                            w.fixing = std::move(fixing);
                            w.alice_kept = {NodeId{Party::A, a1}, NodeId{Party::A, a2}};
                            w.bob_kept = {NodeId{Party::B, b1}, NodeId{Party::B, b2}};
                            return {ChshStatus::found, std::move(w)};
                        }
                    }
                }
    return res;
}

}  // namespace cutbell
