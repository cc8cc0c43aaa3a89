#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cutbell/families.hpp"
#include "cutbell/symmetry.hpp"

using namespace cutbell;

namespace {

CutIneq random_ineq(const Graph& g, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    CutIneq f(g);
    for (auto& c : f.coeffs) c = coeff(rng);
    f.rhs = coeff(rng);
    return f;
}

Cut random_cut(const Graph& g, std::mt19937& rng) {
    int n = g.nA() + g.nB();
    std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t(1) << n) - 1);
    return Cut{bits(rng)};  // bit k = node k+1; X is never a member
}

GroupElement random_element(const Graph& g, GroupMode mode, std::mt19937& rng) {
    std::vector<Perm> perms = legal_perms(g, mode);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    return GroupElement{perms[pick(rng)], random_cut(g, rng), 1};
}

}  // namespace

TEST_CASE("switching commutes with evaluation") {
    std::mt19937 rng(31);
    for (const Graph& g : {build_graph(GraphKind::tripartite, 2, 3), build_graph(GraphKind::complete, 2, 2)}) {
        for (int iter = 0; iter < 30; ++iter) {
            CutIneq f = random_ineq(g, rng);
            Cut w = random_cut(g, rng);
            CutIneq sw = switch_ineq(f, w);
            for (const Cut& s : enumerate_cuts(g)) {
                Cut sym{s.bits ^ w.bits};
                REQUIRE(evaluate(sw, sym) - sw.rhs == evaluate(f, s) - f.rhs);
            }
            // involution
            REQUIRE(switch_ineq(sw, w) == f);
        }
    }
}

TEST_CASE("permutation commutes with evaluation") {
    std::mt19937 rng(32);
    Graph g = build_graph(GraphKind::tripartite, 3, 2);
    std::vector<Perm> perms = legal_perms(g, GroupMode::party);
    for (int iter = 0; iter < 30; ++iter) {
        CutIneq f = random_ineq(g, rng);
        for (const Perm& p : perms) {
            CutIneq pf = permute(f, p, GroupMode::party);
            for (const Cut& s : enumerate_cuts(g)) {
                Cut img = perm_cut(g, p, s);
                REQUIRE(evaluate(pf, img) == evaluate(f, s));
            }
        }
    }
}

TEST_CASE("group composition and inverse laws hold on inequalities") {
    std::mt19937 rng(33);
    Graph g = build_graph(GraphKind::tripartite, 2, 2);
    for (int iter = 0; iter < 60; ++iter) {
        CutIneq f = random_ineq(g, rng);
        GroupElement e1 = random_element(g, GroupMode::party, rng);
        GroupElement e2 = random_element(g, GroupMode::party, rng);
        REQUIRE(apply(compose(e2, e1, g), f) == apply(e2, apply(e1, f)));
        REQUIRE(apply(inverse(e1, g), apply(e1, f)) == f);
        REQUIRE(apply(identity_element(g), f) == f);
    }
}

TEST_CASE("canonical form is constant on orbits") {
    std::mt19937 rng(34);
    Graph g = build_graph(GraphKind::tripartite, 2, 2);
    for (int iter = 0; iter < 15; ++iter) {
        CutIneq f = random_ineq(g, rng);
        if (f.is_zero() && f.rhs == 0) continue;
        CanonKey key = canonical_form(f, GroupMode::party);
        for (int k = 0; k < 5; ++k) {
            GroupElement e = random_element(g, GroupMode::party, rng);
            std::uniform_int_distribution<int> num(1, 4);
            e.scale = Rat(num(rng), num(rng));
            REQUIRE(canonical_form(apply(e, f), GroupMode::party) == key);
        }
        // the canonical representative is in the orbit
        REQUIRE(equivalent(key_to_ineq(key), f, GroupMode::party));
    }
}

TEST_CASE("full-mode canonical form is constant under node permutations") {
    std::mt19937 rng(35);
    Graph g = build_graph(GraphKind::complete, 2, 2);
    std::vector<Perm> perms = legal_perms(g, GroupMode::full);
    REQUIRE(perms.size() == 120);  // 5!
    for (int iter = 0; iter < 5; ++iter) {
        CutIneq f = random_ineq(g, rng);
        if (f.is_zero() && f.rhs == 0) continue;
        CanonKey key = canonical_form(f, GroupMode::full);
        std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
        for (int k = 0; k < 6; ++k) {
            CutIneq h = permute(f, perms[pick(rng)], GroupMode::full);
            h = switch_ineq(h, random_cut(g, rng));
            REQUIRE(canonical_form(h, GroupMode::full) == key);
        }
    }
}

TEST_CASE("equivalence certificates verify by application") {
    std::mt19937 rng(36);
    Graph g = build_graph(GraphKind::tripartite, 3, 2);
    for (int iter = 0; iter < 20; ++iter) {
        CutIneq f = random_ineq(g, rng);
        if (f.is_zero() && f.rhs == 0) continue;
        GroupElement e = random_element(g, GroupMode::party, rng);
        e.scale = Rat(3, 2);
        CutIneq t = apply(e, f);
        auto cert = equivalent(f, t, GroupMode::party);
        REQUIRE(cert.has_value());
        // replay the certificate on the support-reduced forms
        CutIneq from = support_reduce(f).reduced;
        if (cert->transposed) from = transpose(from);
        REQUIRE(primitive_normalized(apply(cert->element, from)) ==
                primitive_normalized(support_reduce(t).reduced));
    }
}

TEST_CASE("party swap is detected as an equivalence") {
    CutIneq f = cg_to_cut(catalog("i3422_1").cg.value());  // (3,4) scenario
    CutIneq t = transpose(f);
    auto cert = equivalent(f, t, GroupMode::party);
    REQUIRE(cert.has_value());
    REQUIRE(cert->transposed);
    REQUIRE_FALSE(equivalent(f, cg_to_cut(catalog("chsh").cg.value()), GroupMode::party));
}

TEST_CASE("classify partitions orbit unions deterministically") {
    std::mt19937 rng(37);
    Graph g = build_graph(GraphKind::tripartite, 2, 2);
    std::vector<CutIneq> base;
    for (int k = 0; k < 4; ++k) base.push_back(random_ineq(g, rng));
    std::vector<CutIneq> list;
    for (const CutIneq& f : base)
        for (int k = 0; k < 3; ++k) list.push_back(apply(random_element(g, GroupMode::party, rng), f));
    std::vector<ClassInfo> classes = classify(list, GroupMode::party);
    REQUIRE(classes.size() <= base.size());
    std::size_t total = 0;
    for (const ClassInfo& c : classes) {
        total += c.members.size();
        for (std::size_t m : c.members)
            REQUIRE(equivalent(list[m], c.representative, GroupMode::party));
    }
    REQUIRE(total == list.size());
    // shuffling the input leaves the representatives unchanged
    std::vector<CutIneq> shuffled = list;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<ClassInfo> again = classify(shuffled, GroupMode::party);
    REQUIRE(again.size() == classes.size());
    for (std::size_t k = 0; k < classes.size(); ++k)
        REQUIRE(again[k].representative == classes[k].representative);
}

TEST_CASE("switching matches an outcome relabelling identity") {
    // sigma(switch_W(h)) = switch_{sigma W}(sigma h)
    std::mt19937 rng(38);
    Graph g = build_graph(GraphKind::tripartite, 2, 3);
    std::vector<Perm> perms = legal_perms(g, GroupMode::party);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    for (int iter = 0; iter < 40; ++iter) {
        CutIneq f = random_ineq(g, rng);
        Cut w = random_cut(g, rng);
        const Perm& p = perms[pick(rng)];
        REQUIRE(permute(switch_ineq(f, w), p, GroupMode::party) ==
                switch_ineq(permute(f, p, GroupMode::party), perm_cut(g, p, w)));
    }
}
