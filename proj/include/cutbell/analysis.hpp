#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cutbell/graph.hpp"
#include "cutbell/inequality.hpp"
#include "cutbell/rank.hpp"

namespace cutbell {

struct enumeration_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnalysisOptions {
    // log2 of the number of enumerated assignments. Complete graphs
    // enumerate all 2^(nA+nB) cuts; tripartite graphs enumerate only the
    // smaller party (the other side decomposes per node), so the bound
    // applies to min(mA, mB) there.
    int enumeration_cap = 26;
};

struct TightnessReport {
    bool valid = false;
    Rat max_value = 0;
    Int root_count = 0;
    long long face_dim = -1;   // affine dimension of the root set
    long long polytope_dim = 0;
    bool is_facet = false;
};

namespace detail {

struct IntForm {
    std::vector<std::int64_t> coeffs;
    std::int64_t rhs = 0;
    Rat scale = 1;  // prim = scale * original
};

inline IntForm int_form(const CutIneq& f) {
    Rat s;
    CutIneq prim = primitive_normalized(f, &s);
    IntForm out;
    out.scale = s;
    out.coeffs.reserve(prim.coeffs.size());
    std::int64_t magnitude = 0;
    for (const Rat& c : prim.coeffs) {
        std::int64_t v = to_int64_checked(rat_num(c));
        out.coeffs.push_back(v);
        magnitude += std::abs(v);
        if (magnitude > (std::int64_t(1) << 40))
            throw std::overflow_error("coefficients too large for the sweep engine");
    }
    out.rhs = to_int64_checked(rat_num(prim.rhs));
    return out;
}

struct SweepResult {
    std::int64_t max_value = 0;
    std::uint64_t witness = 0;  // a maximizing cut
    Int root_count = 0;
    bool insertion_complete = true;  // every root (up to free-cube spanning) reached the sink
};

// sink(cut_bits) is called on roots; it may stop accepting (saturated()).
template <class Sink>
SweepResult sweep_complete(const Graph& g, const IntForm& f, Sink&& sink, int per_base_cap) {
    (void)per_base_cap;
    const int k = g.nA() + g.nB();
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj(static_cast<size_t>(g.node_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        std::int64_t a = f.coeffs[static_cast<size_t>(e)];
        if (a == 0) continue;
        auto [u, v] = g.edges()[static_cast<size_t>(e)];
        adj[static_cast<size_t>(u)].emplace_back(v, a);
        adj[static_cast<size_t>(v)].emplace_back(u, a);
    }
    SweepResult res;
    std::uint64_t s = 0;
    std::int64_t val = 0;
    res.max_value = 0;
    res.witness = 0;
    auto visit = [&](std::uint64_t bits, std::int64_t v) {
        if (v > res.max_value) { res.max_value = v; res.witness = bits; }
        if (v == f.rhs) {
            res.root_count += 1;
            sink(bits);
        }
    };
    visit(0, 0);
    const std::uint64_t total = std::uint64_t(1) << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        int b = static_cast<int>(__builtin_ctzll(i));
        int vnode = b + 1;
        s ^= (std::uint64_t(1) << b);
        bool vin = (s >> b) & 1u;
        std::int64_t delta = 0;
        for (auto [u, a] : adj[static_cast<size_t>(vnode)]) {
            bool uin = (u == 0) ? false : ((s >> (u - 1)) & 1u);
            delta += (uin != vin) ? a : -a;
        }
        val += delta;
        visit(s, val);
    }
    return res;
}

// Tripartite sweep: enumerate cuts of the outer (smaller) party; each
// inner-party node's contribution is independent given the outer
// assignment, contributing max(c_out, c_in). Roots per outer assignment
// form {drop subsets summing to the slack} x {free-node cube}; the sink
// receives a spanning family (all drop solutions plus single-node toggles
// of the free cube), which affinely spans the root set at that assignment.
template <class Sink>
SweepResult sweep_tripartite(const Graph& g, const IntForm& f, Sink&& sink, int per_base_cap) {
    const bool outer_is_a = g.nA() <= g.nB();
    const int mo = outer_is_a ? g.nA() : g.nB();
    const int mi = outer_is_a ? g.nB() : g.nA();
    auto outer_node = [&](int k) { return outer_is_a ? g.a_node(k) : g.b_node(k); };
    auto inner_node = [&](int j) { return outer_is_a ? g.b_node(j) : g.a_node(j); };

    std::vector<std::int64_t> xo(static_cast<size_t>(mo) + 1), xin(static_cast<size_t>(mi) + 1),
        colsum(static_cast<size_t>(mi) + 1, 0);
    std::vector<std::vector<std::int64_t>> cross(static_cast<size_t>(mo) + 1,
                                                 std::vector<std::int64_t>(static_cast<size_t>(mi) + 1, 0));
    for (int k = 1; k <= mo; ++k) xo[static_cast<size_t>(k)] = f.coeffs[static_cast<size_t>(g.edge_index(0, outer_node(k)))];
    for (int j = 1; j <= mi; ++j) xin[static_cast<size_t>(j)] = f.coeffs[static_cast<size_t>(g.edge_index(0, inner_node(j)))];
    for (int k = 1; k <= mo; ++k)
        for (int j = 1; j <= mi; ++j) {
            std::int64_t a = f.coeffs[static_cast<size_t>(g.edge_index(outer_node(k), inner_node(j)))];
            cross[static_cast<size_t>(k)][static_cast<size_t>(j)] = a;
            colsum[static_cast<size_t>(j)] += a;
        }

    auto node_bit = [&](int node) { return std::uint64_t(1) << (node - 1); };

    SweepResult res;
    bool have_max = false;

    std::uint64_t s = 0;
    std::int64_t base = 0;
    std::vector<std::int64_t> cout_(static_cast<size_t>(mi) + 1, 0);

    std::vector<std::int64_t> hi(static_cast<size_t>(mi) + 1), drop(static_cast<size_t>(mi) + 1);
    std::vector<int> hi_inside(static_cast<size_t>(mi) + 1);  // 1 if the hi choice puts the node in the cut
    std::vector<int> constrained, freelist;
    std::vector<std::uint64_t> dp_count;

    auto process = [&](std::uint64_t outer_bits) {
        std::int64_t sum_hi = 0;
        for (int j = 1; j <= mi; ++j) {
            std::int64_t co = cout_[static_cast<size_t>(j)];
            std::int64_t ci = xin[static_cast<size_t>(j)] + colsum[static_cast<size_t>(j)] - co;
            if (co >= ci) {
                hi[static_cast<size_t>(j)] = co;
                hi_inside[static_cast<size_t>(j)] = 0;
                drop[static_cast<size_t>(j)] = co - ci;
            } else {
                hi[static_cast<size_t>(j)] = ci;
                hi_inside[static_cast<size_t>(j)] = 1;
                drop[static_cast<size_t>(j)] = ci - co;
            }
            sum_hi += hi[static_cast<size_t>(j)];
        }
        std::int64_t tot = base + sum_hi;
        std::uint64_t best_bits = outer_bits;
        for (int j = 1; j <= mi; ++j)
            if (hi_inside[static_cast<size_t>(j)]) best_bits |= node_bit(inner_node(j));
        if (!have_max || tot > res.max_value) {
            res.max_value = tot;
            res.witness = best_bits;
            have_max = true;
        }
        std::int64_t slack = tot - f.rhs;
        if (slack < 0) return;
        constrained.clear();
        freelist.clear();
        for (int j = 1; j <= mi; ++j) {
            if (drop[static_cast<size_t>(j)] > 0) constrained.push_back(j);
            else freelist.push_back(j);
        }
        // exact root count via subset-sum DP over the positive drops
        if (slack > (std::int64_t(1) << 22))
            throw std::overflow_error("root counting range too large");
        dp_count.assign(static_cast<size_t>(slack) + 1, 0);
        dp_count[0] = 1;
        for (int j : constrained) {
            std::int64_t dj = drop[static_cast<size_t>(j)];
            for (std::int64_t x = slack; x >= dj; --x)
                dp_count[static_cast<size_t>(x)] += dp_count[static_cast<size_t>(x - dj)];
        }
        std::uint64_t nsol = dp_count[static_cast<size_t>(slack)];
        if (nsol == 0) return;
        res.root_count += Int(nsol) << static_cast<unsigned>(freelist.size());

        if (sink.saturated()) return;

        // enumerate drop subsets summing to slack (capped per assignment
        // unless per_base_cap < 0)
        std::vector<std::int64_t> suffix(constrained.size() + 1, 0);
        for (size_t i = constrained.size(); i-- > 0;)
            suffix[i] = suffix[i + 1] + drop[static_cast<size_t>(constrained[i])];
        int emitted = 0;
        bool first_solution = true;
        std::uint64_t chosen_lo = 0;  // bits of inner nodes switched to their lo choice
        std::function<void(size_t, std::int64_t)> rec = [&](size_t idx, std::int64_t rem) {
            if (sink.saturated()) return;
            if (per_base_cap >= 0 && emitted >= per_base_cap) {
                res.insertion_complete = false;
                return;
            }
            if (rem == 0) {
                std::uint64_t root = best_bits ^ chosen_lo;
                sink(root);
                ++emitted;
                if (first_solution) {
                    first_solution = false;
                    for (int j : freelist) {
                        if (sink.saturated()) break;
                        sink(root ^ node_bit(inner_node(j)));
                    }
                }
                return;
            }
            if (idx >= constrained.size() || rem > suffix[idx] || rem < 0) return;
            int j = constrained[idx];
            std::int64_t dj = drop[static_cast<size_t>(j)];
            if (dj <= rem) {
                chosen_lo |= node_bit(inner_node(j));
                rec(idx + 1, rem - dj);
                chosen_lo &= ~node_bit(inner_node(j));
            }
            rec(idx + 1, rem);
        };
        rec(0, slack);
    };

    // The gray counter runs over compact outer indices; `s` keeps the same
    // subset in graph node-bit positions (needed by process and the sink).
    process(0);
    std::uint64_t compact = 0;
    const std::uint64_t total = std::uint64_t(1) << mo;
    for (std::uint64_t i = 1; i < total; ++i) {
        int b = static_cast<int>(__builtin_ctzll(i));
        int k = b + 1;  // outer index
        compact ^= std::uint64_t(1) << b;
        s ^= node_bit(outer_node(k));
        bool now_in = (compact >> b) & 1u;
        std::int64_t sign = now_in ? 1 : -1;
        base += sign * xo[static_cast<size_t>(k)];
        for (int j = 1; j <= mi; ++j)
            cout_[static_cast<size_t>(j)] += sign * cross[static_cast<size_t>(k)][static_cast<size_t>(j)];
        process(s);
    }
    return res;
}

template <class Sink>
SweepResult sweep(const Graph& g, const IntForm& f, Sink&& sink, int per_base_cap) {
    if (g.kind() == GraphKind::complete) return sweep_complete(g, f, sink, per_base_cap);
    return sweep_tripartite(g, f, sink, per_base_cap);
}

inline void check_cap(const Graph& g, int cap) {
    int k = (g.kind() == GraphKind::complete) ? g.nA() + g.nB() : std::min(g.nA(), g.nB());
    if (k > cap) throw enumeration_cap_error("enumeration cap exceeded: 2^" + std::to_string(k) +
                                             " assignments needed, cap is 2^" + std::to_string(cap));
    if (g.nA() + g.nB() > 62) throw enumeration_cap_error("more than 62 observables");
}

struct NullSink {
    bool saturated() const { return true; }
    void operator()(std::uint64_t) const {}
};

template <class Tracker>
struct RankSink {
    const Graph* g;
    Tracker* tracker;
    std::vector<std::int64_t> scratch;

    RankSink(const Graph& graph, Tracker& t) : g(&graph), tracker(&t) {
        scratch.assign(static_cast<size_t>(graph.edge_count()) + 1, 0);
    }
    bool saturated() const { return tracker->saturated(); }
    void operator()(std::uint64_t bits) {
        Cut s{bits};
        for (int e = 0; e < g->edge_count(); ++e)
            scratch[static_cast<size_t>(e)] = edge_is_cut(*g, s, e) ? 1 : 0;
        scratch[static_cast<size_t>(g->edge_count())] = 1;  // homogenizing coordinate
        if constexpr (std::is_same_v<Tracker, RationalRankTracker>)
            tracker->insert_ints(scratch);
        else
            tracker->insert(scratch);
    }
};

}  // namespace detail

inline std::pair<bool, std::optional<Cut>> is_valid(const CutIneq& f, const AnalysisOptions& opt = {}) {
    detail::check_cap(f.graph, opt.enumeration_cap);
    if (f.is_zero()) {
        if (f.rhs >= 0) return {true, std::nullopt};
        return {false, Cut{0}};
    }
    detail::IntForm form = detail::int_form(f);
    auto res = detail::sweep(f.graph, form, detail::NullSink{}, 0);
    if (res.max_value <= form.rhs) return {true, std::nullopt};
    return {false, Cut{res.witness}};
}

inline Rat max_value(const CutIneq& f, const AnalysisOptions& opt = {}) {
    detail::check_cap(f.graph, opt.enumeration_cap);
    if (f.is_zero()) return 0;
    detail::IntForm form = detail::int_form(f);
    auto res = detail::sweep(f.graph, form, detail::NullSink{}, 0);
    return Rat(res.max_value) / form.scale;
}

// Exact facet certification: validity by exhaustive sweep, face dimension
// by exact rank of the homogenized root vectors. The fast pass certifies
// rank lower bounds mod p (exact for the facet direction); if it does not
// saturate, a second pass recomputes the rank over Q, so the reported
// face_dim is always exact.
inline TightnessReport tightness_report(const CutIneq& f, const AnalysisOptions& opt = {}) {
    detail::check_cap(f.graph, opt.enumeration_cap);
    TightnessReport rep;
    rep.polytope_dim = f.graph.edge_count();
    const int k = f.graph.nA() + f.graph.nB();
    if (f.is_zero()) {
        rep.valid = f.rhs >= 0;
        rep.max_value = 0;
        if (f.rhs == 0) {
            rep.root_count = Int(1) << static_cast<unsigned>(k);
            rep.face_dim = rep.polytope_dim;  // the polytope itself is full-dimensional
        } else {
            rep.root_count = 0;
            rep.face_dim = -1;
        }
        rep.is_facet = false;
        return rep;
    }
    detail::IntForm form = detail::int_form(f);
    const int dim = f.graph.edge_count();

    ModPRankTracker fast(dim + 1, dim);  // homogenized rank d  <=>  face_dim d-1
    detail::RankSink<ModPRankTracker> fast_sink(f.graph, fast);
    auto res = detail::sweep(f.graph, form, fast_sink, 128);

    rep.max_value = Rat(res.max_value) / form.scale;
    rep.valid = res.max_value <= form.rhs;
    rep.root_count = res.root_count;

    if (fast.saturated()) {
        rep.face_dim = dim - 1;
    } else if (res.root_count == 0) {
        rep.face_dim = -1;
    } else {
        // exact pass over Q, uncapped
        RationalRankTracker exact(dim + 1, dim);
        detail::RankSink<RationalRankTracker> exact_sink(f.graph, exact);
        detail::sweep(f.graph, form, exact_sink, -1);
        rep.face_dim = exact.rank() - 1;
    }
    rep.is_facet = rep.valid && rep.face_dim == rep.polytope_dim - 1;
    return rep;
}

// Root cuts of an inequality (complete enumeration; small scenarios only).
inline std::vector<Cut> root_cuts(const CutIneq& f, const AnalysisOptions& opt = {}) {
    int k = f.graph.nA() + f.graph.nB();
    if (k > opt.enumeration_cap) throw enumeration_cap_error("root enumeration beyond cap");
    std::vector<Cut> roots;
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << k); ++m) {
        Cut s{m};
        if (evaluate(f, s) == f.rhs) roots.push_back(s);
    }
    return roots;
}

// Extend an inequality to a larger scenario with zero coefficients on the
// new observables (De Simone zero-lifting; preserves facet status).
inline CutIneq zero_lift(const CutIneq& f, int nA, int nB) {
    if (nA < f.graph.nA() || nB < f.graph.nB())
        throw std::invalid_argument("zero_lift target must dominate the source scenario");
    Graph g = build_graph(f.graph.kind(), nA, nB);
    CutIneq out(g);
    for (int e = 0; e < f.graph.edge_count(); ++e) {
        if (f.coeffs[static_cast<size_t>(e)] == 0) continue;
        auto [u, v] = f.graph.edges()[static_cast<size_t>(e)];
        out.coeff(f.graph.node_id(u), f.graph.node_id(v)) = f.coeffs[static_cast<size_t>(e)];
    }
    out.rhs = f.rhs;
    return out;
}

struct SupportReduceResult {
    CutIneq reduced;
    std::vector<NodeId> removed;
    bool all_zero = false;
};

// Drop observables whose every incident coefficient is zero (inverse of
// zero_lift on its image).
inline SupportReduceResult support_reduce(const CutIneq& f) {
    SupportReduceResult res;
    const Graph& g = f.graph;
    if (f.is_zero()) {
        res.all_zero = true;
        res.reduced = CutIneq(build_graph(g.kind(), 1, 0));
        res.reduced.rhs = f.rhs;
        for (int v = 1; v < g.node_count(); ++v) res.removed.push_back(g.node_id(v));
        return res;
    }
    std::vector<int> keep_a, keep_b;
    for (int v = 1; v < g.node_count(); ++v) {
        bool used = false;
        for (int u = 0; u < g.node_count() && !used; ++u) {
            int e = g.edge_index_of(u, v);
            if (e >= 0 && f.coeffs[static_cast<size_t>(e)] != 0) used = true;
        }
        NodeId id = g.node_id(v);
        if (used) {
            (id.party == Party::A ? keep_a : keep_b).push_back(id.index);
        } else {
            res.removed.push_back(id);
        }
    }
    Graph rg = build_graph(g.kind(), static_cast<int>(keep_a.size()), static_cast<int>(keep_b.size()));
    CutIneq out(rg);
    auto old_node = [&](const NodeId& nid) {
        if (nid.party == Party::X) return NodeId{Party::X, 0};
        if (nid.party == Party::A) return NodeId{Party::A, keep_a[static_cast<size_t>(nid.index - 1)]};
        return NodeId{Party::B, keep_b[static_cast<size_t>(nid.index - 1)]};
    };
    for (int e = 0; e < rg.edge_count(); ++e) {
        auto [u, v] = rg.edges()[static_cast<size_t>(e)];
        out.coeffs[static_cast<size_t>(e)] = f.coeff(old_node(rg.node_id(u)), old_node(rg.node_id(v)));
    }
    out.rhs = f.rhs;
    res.reduced = std::move(out);
    return res;
}

}  // namespace cutbell
