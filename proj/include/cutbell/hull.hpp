#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutbell/analysis.hpp"
#include "cutbell/graph.hpp"
#include "cutbell/inequality.hpp"
#include "cutbell/rank.hpp"
#include "cutbell/symmetry.hpp"

namespace cutbell {

struct degenerate_input_error : std::runtime_error {
    int affine_dim;
    degenerate_input_error(std::string msg, int ad) : std::runtime_error(std::move(msg)), affine_dim(ad) {}
};

// H-representation of a full-dimensional polytope conv(points):
// normals[i] . x <= rhs[i], primitive integer, sorted, irredundant.
struct RawHRep {
    int dim = 0;
    std::size_t vertex_count = 0;
    std::vector<std::vector<Int>> normals;
    std::vector<Int> rhs;

    std::size_t facet_count() const { return normals.size(); }
};

namespace detail {

struct DDRay {
    std::vector<Int> y;       // (a0, a) in the dual cone {a.p <= a0 for all p}
    std::uint64_t active = 0;  // constraints satisfied with equality (all m)
};

inline std::vector<Int> normalize_ray(std::vector<Int> y) {
    Int g = 0;
    for (const Int& c : y) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(c));
    if (g > 1)
        for (Int& c : y) c /= g;
    return y;
}

}  // namespace detail

// Exact double description: facets of conv(points) are the extreme rays of
// the pointed dual cone {(a0, a) : a0 - a.p_i >= 0}. Constraints are
// inserted in input order after a deterministic independent start basis;
// adjacency of rays uses the combinatorial zero-set test. At most 64 points.
inline RawHRep dd_hull(const std::vector<std::vector<Rat>>& points) {
    if (points.empty()) throw std::invalid_argument("no points");
    const int d = static_cast<int>(points[0].size());
    const std::size_t m = points.size();
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (m > 64) throw std::invalid_argument("double description backend caps at 64 points");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d) throw std::invalid_argument("inconsistent point dimensions");

    // constraint rows (1, -p_i), scaled to primitive integers
    std::vector<std::vector<Int>> rows(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rat> r(static_cast<size_t>(d) + 1);
        r[0] = 1;
        for (int j = 0; j < d; ++j) r[static_cast<size_t>(j) + 1] = -points[i][static_cast<size_t>(j)];
        rows[i] = to_primitive(r);
    }

    // deterministic independent start basis
    std::vector<std::size_t> basis;
    {
        RationalRankTracker t(d + 1);
        for (std::size_t i = 0; i < m && static_cast<int>(basis.size()) < d + 1; ++i) {
            std::vector<Rat> r(rows[i].begin(), rows[i].end());
            if (t.insert(r)) basis.push_back(i);
        }
        if (static_cast<int>(basis.size()) < d + 1)
            throw degenerate_input_error("points do not affinely span; affine dimension " +
                                             std::to_string(static_cast<int>(basis.size()) - 1),
                                         static_cast<int>(basis.size()) - 1);
    }

    // rays of the simplicial start cone: columns of the basis inverse
    // (ray_j has value 1 on basis row j, 0 on the others)
    std::vector<detail::DDRay> rays;
    {
        const int n = d + 1;
        std::vector<std::vector<Rat>> aug(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(2 * n), Rat(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(rows[basis[static_cast<size_t>(i)]][static_cast<size_t>(j)]);
            aug[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { piv = r; break; }
            if (piv < 0) throw std::logic_error("singular basis");
            std::swap(aug[static_cast<size_t>(col)], aug[static_cast<size_t>(piv)]);
            Rat pv = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int j = 0; j < 2 * n; ++j) aug[static_cast<size_t>(col)][static_cast<size_t>(j)] /= pv;
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                Rat f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int j = 0; j < 2 * n; ++j)
                    aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * aug[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
        for (int j = 0; j < n; ++j) {
            std::vector<Rat> col(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = aug[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
            detail::DDRay ray;
            ray.y = to_primitive(col);
            rays.push_back(std::move(ray));
        }
    }

    auto dot = [&](const std::vector<Int>& row, const std::vector<Int>& y) {
        Int s = 0;
        for (int j = 0; j <= d; ++j) s += row[static_cast<size_t>(j)] * y[static_cast<size_t>(j)];
        return s;
    };
    auto compute_active = [&](detail::DDRay& r) {
        r.active = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (dot(rows[i], r.y) == 0) r.active |= std::uint64_t(1) << i;
    };
    for (auto& r : rays) compute_active(r);

    std::uint64_t processed = 0;
    for (std::size_t b : basis) processed |= std::uint64_t(1) << b;

    std::vector<Int> vals;
    for (std::size_t c = 0; c < m; ++c) {
        if (processed & (std::uint64_t(1) << c)) continue;
        vals.resize(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            vals[r] = dot(rows[c], rays[r].y);
            if (vals[r] > 0) pos.push_back(r);
            else if (vals[r] < 0) neg.push_back(r);
        }
        std::vector<detail::DDRay> next;
        next.reserve(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (vals[r] >= 0) next.push_back(rays[r]);
        const int need = d - 1;  // an extreme ray needs d active constraints; one is c
        for (std::size_t p : pos)
            for (std::size_t n : neg) {
                std::uint64_t z = rays[p].active & rays[n].active & processed;
                if (std::popcount(z) < need) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == n || vals[r] < 0) continue;
                    // only current-cone rays matter; dropped rays are vals<0
                    if ((rays[r].active & z) == z) adjacent = false;
                }
                if (!adjacent) continue;
                detail::DDRay nr;
                nr.y.resize(static_cast<size_t>(d) + 1);
                for (int j = 0; j <= d; ++j)
                    nr.y[static_cast<size_t>(j)] =
                        vals[p] * rays[n].y[static_cast<size_t>(j)] - vals[n] * rays[p].y[static_cast<size_t>(j)];
                nr.y = detail::normalize_ray(std::move(nr.y));
                compute_active(nr);
                next.push_back(std::move(nr));
            }
        rays = std::move(next);
        processed |= std::uint64_t(1) << c;
    }

    RawHRep out;
    out.dim = d;
    out.vertex_count = m;
    std::vector<std::pair<std::vector<Int>, Int>> facets;
    for (const auto& r : rays) {
        bool zero = true;
        for (int j = 1; j <= d && zero; ++j)
            if (r.y[static_cast<size_t>(j)] != 0) zero = false;
        if (zero) continue;  // the trivial ray 0 <= a0 is not a facet
        std::vector<Int> a(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j) a[static_cast<size_t>(j)] = r.y[static_cast<size_t>(j) + 1];
        facets.emplace_back(std::move(a), r.y[0]);
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    for (auto& [a, a0] : facets) {
        out.normals.push_back(std::move(a));
        out.rhs.push_back(std::move(a0));
    }
    return out;
}

struct HRep {
    int dim = 0;
    std::size_t vertex_count = 0;
    std::vector<CutIneq> facets;
};

// Facets of the convex hull of edge vectors over a fixed graph, each
// verified against the point list: every point satisfies every facet, and
// each facet's roots affinely span a hyperplane.
inline HRep enumerate_facets(const std::vector<EdgeVector>& points, const Graph& g) {
    std::vector<std::vector<Rat>> pts(points.begin(), points.end());
    RawHRep raw = dd_hull(pts);
    if (raw.dim != g.edge_count()) throw std::invalid_argument("point dimension does not match graph");
    HRep out;
    out.dim = raw.dim;
    out.vertex_count = raw.vertex_count;
    const int d = raw.dim;
    for (std::size_t fidx = 0; fidx < raw.facet_count(); ++fidx) {
        CutIneq f(g);
        for (int j = 0; j < d; ++j) f.coeffs[static_cast<size_t>(j)] = Rat(raw.normals[fidx][static_cast<size_t>(j)]);
        f.rhs = Rat(raw.rhs[fidx]);
        // post-hoc certification against the input points
        ModPRankTracker roots(d + 1, d);
        std::vector<std::int64_t> hom(static_cast<size_t>(d) + 1);
        for (const auto& p : points) {
            Rat v = 0;
            for (int j = 0; j < d; ++j)
                if (f.coeffs[static_cast<size_t>(j)] != 0) v += f.coeffs[static_cast<size_t>(j)] * p[static_cast<size_t>(j)];
            if (v > f.rhs) throw std::logic_error("hull output violated by an input point");
            if (v == f.rhs) {
                for (int j = 0; j < d; ++j) hom[static_cast<size_t>(j)] = to_int64_checked(rat_num(p[static_cast<size_t>(j)]));
                hom[static_cast<size_t>(d)] = 1;
                roots.insert(hom);
            }
        }
        if (!roots.saturated()) {
            // mod-p undershoot is possible in principle; recheck over Q
            RationalRankTracker exact(d + 1, d);
            for (const auto& p : points) {
                Rat v = 0;
                for (int j = 0; j < d; ++j) v += f.coeffs[static_cast<size_t>(j)] * p[static_cast<size_t>(j)];
                if (v == f.rhs) {
                    std::vector<Rat> h(p.begin(), p.end());
                    h.push_back(1);
                    exact.insert(h);
                }
            }
            if (!exact.saturated()) throw std::logic_error("hull output is not a facet of the point set");
        }
        out.facets.push_back(std::move(f));
    }
    return out;
}

struct CutFacets {
    HRep hrep;
    std::vector<ClassInfo> classes;
};

// Facets of the cut polytope of the complete graph on n nodes, classified
// under the full symmetry group, each facet re-certified through the
// independent sweep/rank path.
inline CutFacets cut_polytope_facets(int n, bool long_running = false) {
    if (n < 2 || n > 7) throw std::invalid_argument("cut polytope facets supported for 2 <= n <= 7");
    if (n == 7 && !long_running) throw std::invalid_argument("n = 7 requires the long-running flag");
    Graph g = build_graph(GraphKind::complete, n - 1, 0);
    std::vector<EdgeVector> pts;
    for (const Cut& s : enumerate_cuts(g)) pts.push_back(cut_vector(g, s));
    CutFacets out;
    out.hrep = enumerate_facets(pts, g);
    for (const CutIneq& f : out.hrep.facets) {
        TightnessReport rep = tightness_report(f);
        if (!rep.valid || !rep.is_facet) throw std::logic_error("hull facet failed independent re-certification");
    }
    out.classes = classify(out.hrep.facets, GroupMode::full);
    return out;
}

}  // namespace cutbell
