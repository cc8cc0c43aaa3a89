#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cutbell/families.hpp"
#include "cutbell/io.hpp"

using namespace cutbell;

TEST_CASE("record round trip is exact for every catalog entry") {
    for (const char* n : {"chsh", "i3322", "i3422_1", "i3422_2", "i3422_3", "pentagonal",
                          "grishukhin", "triangle", "positive_probability"}) {
        CatalogEntry e = catalog(n);
        ParsedIneq p;
        p.name = n;
        p.cut = e.cut;
        p.cg = e.cg;
        std::string text = emit_record(p);
        ParsedIneq back = parse_ineq(text);
        REQUIRE(back.name == n);
        if (e.cut) REQUIRE(*back.cut == *e.cut);
        if (e.cg) REQUIRE(*back.cg == *e.cg);
        REQUIRE(emit_record(back) == text);
    }
}

TEST_CASE("record round trip is exact for random rational inequalities") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    for (int iter = 0; iter < 40; ++iter) {
        Graph g = build_graph(iter % 2 ? GraphKind::complete : GraphKind::tripartite,
                              1 + iter % 4, 1 + (iter / 4) % 4);
        CutIneq f(g);
        for (auto& c : f.coeffs) c = Rat(num(rng), den(rng));
        f.rhs = Rat(num(rng), den(rng));
        ParsedIneq back = parse_ineq(emit_record(f));
        REQUIRE(*back.cut == f);
    }
}

TEST_CASE("multi-block parsing with comments and blank lines") {
    std::string text =
        "# heading comment\n"
        "\n"
        "ineq cut complete 2 2\n"
        "name first\n"
        "rhs 1/2\n"
        "XA1 -3/7\n"
        "A1A2 2\n"
        "\n"
        "# another\n"
        "ineq cg 2 3\n"
        "rhs 0\n"
        "A2 -1\n"
        "A1B3 5\n";
    auto v = parse_ineqs(text);
    REQUIRE(v.size() == 2);
    REQUIRE(v[0].name == "first");
    REQUIRE(v[0].cut->rhs == Rat(1, 2));
    REQUIRE(v[0].cut->coeff(0, v[0].cut->graph.a_node(1)) == Rat(-3, 7));
    REQUIRE(v[0].cut->coeff(v[0].cut->graph.a_node(1), v[0].cut->graph.a_node(2)) == 2);
    REQUIRE(v[1].cg->alice_marg[1] == -1);
    REQUIRE(v[1].cg->joint[0][2] == 5);
    REQUIRE(v[1].cg->bob_marg == std::vector<Rat>{0, 0, 0});  // omitted entries are zero
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_ineqs(text);
        } catch (const parse_error& e) {
            return e.line;
        }
        return -1;
    };
    REQUIRE(line_of("ineq cut tripartite 2 2\nrhs 0\nA1A2 1\n") == 3);   // intra edge rejected
    REQUIRE(line_of("ineq cg 2 2\nrhs 0\nA3 1\n") == 3);                 // unknown observable
    REQUIRE(line_of("ineq cg 2 2\nrhs 0\nA1B1 1\nA1B1 2\n") == 4);       // duplicate entry
    REQUIRE(line_of("ineq cg 2 2\nrhs 0\nA1 1.5\n") == 3);               // non-rational token
    REQUIRE(line_of("ineq wat 2 2\nrhs 0\n") == 1);                      // malformed header
    REQUIRE(line_of("\n\nineq cut complete x y\nrhs 0\n") == 3);         // malformed sizes
    REQUIRE(line_of("ineq cg 2 2\nA1 1\n") == 1);                        // missing rhs
}

TEST_CASE("cg-matrix places Bob marginals on top and Alice rows on the left") {
    CgIneq chsh = catalog("chsh").cg.value();
    REQUIRE(emit_cg_matrix(chsh) ==
            "    -1   0\n"
            "-1   1   1\n"
            " 0   1  -1\n"
            "<= 0\n");
    ParsedIneq p;
    p.cg = chsh;
    REQUIRE(emit_ineq(p, "cg-matrix") == emit_cg_matrix(chsh));
    ParsedIneq cut;
    cut.cut = catalog("triangle").cut.value();
    REQUIRE_THROWS_AS(emit_ineq(cut, "cg-matrix"), std::invalid_argument);
    REQUIRE_THROWS_AS(emit_ineq(p, "nope"), std::invalid_argument);
}

TEST_CASE("zero inequality emits header and rhs only") {
    CutIneq z(build_graph(GraphKind::complete, 1, 1));
    REQUIRE(emit_record(z) == "ineq cut complete 1 1\nrhs 0\n");
    ParsedIneq back = parse_ineq(emit_record(z));
    REQUIRE(*back.cut == z);
}
