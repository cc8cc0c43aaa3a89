#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cutbell/elimination.hpp"
#include "cutbell/families.hpp"
#include "cutbell/hull.hpp"
#include "cutbell/io.hpp"

using namespace cutbell;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;   // mathematical negative for predicate commands
constexpr int kExitUsage = 2;      // usage or parse error

std::vector<ParsedIneq> read_input(const std::string& path) {
    if (path.empty() || path == "-") return parse_ineqs(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    return parse_ineqs(in);
}

json rat_json(const Rat& r) { return rat_str(r); }

json ineq_json(const ParsedIneq& p) {
    json j;
    if (!p.name.empty()) j["name"] = p.name;
    if (p.cut) {
        const CutIneq& f = *p.cut;
        j["form"] = "cut";
        j["kind"] = f.graph.kind() == GraphKind::complete ? "complete" : "tripartite";
        j["nA"] = f.graph.nA();
        j["nB"] = f.graph.nB();
        json c = json::object();
        for (int e = 0; e < f.graph.edge_count(); ++e)
            if (f.coeffs[static_cast<size_t>(e)] != 0)
                c[f.graph.edge_name(e)] = rat_json(f.coeffs[static_cast<size_t>(e)]);
        j["coeffs"] = std::move(c);
        j["rhs"] = rat_json(f.rhs);
    } else {
        const CgIneq& f = *p.cg;
        j["form"] = "cg";
        j["mA"] = f.mA;
        j["mB"] = f.mB;
        json am = json::array(), bm = json::array(), jt = json::array();
        for (const Rat& v : f.alice_marg) am.push_back(rat_json(v));
        for (const Rat& v : f.bob_marg) bm.push_back(rat_json(v));
        for (const auto& row : f.joint) {
            json r = json::array();
            for (const Rat& v : row) r.push_back(rat_json(v));
            jt.push_back(std::move(r));
        }
        j["alice_marg"] = std::move(am);
        j["bob_marg"] = std::move(bm);
        j["joint"] = std::move(jt);
        j["rhs"] = rat_json(f.rhs);
    }
    return j;
}

ParsedIneq wrap(CutIneq f, std::string name = "") {
    ParsedIneq p;
    p.cut = std::move(f);
    p.name = std::move(name);
    return p;
}

ParsedIneq wrap(CgIneq f, std::string name = "") {
    ParsedIneq p;
    p.cg = std::move(f);
    p.name = std::move(name);
    return p;
}

void print_ineqs(const std::vector<ParsedIneq>& v, bool as_json, const std::string& format = "record") {
    if (as_json) {
        json out = json::array();
        for (const ParsedIneq& p : v) out.push_back(ineq_json(p));
        std::cout << out.dump(2) << '\n';
        return;
    }
    bool first = true;
    for (const ParsedIneq& p : v) {
        if (!first) std::cout << '\n';
        first = false;
        std::cout << emit_ineq(p, format);
    }
}

std::vector<long long> parse_weights(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

json tightness_json(const TightnessReport& r) {
    json j;
    j["valid"] = r.valid;
    j["max_value"] = rat_json(r.max_value);
    j["root_count"] = r.root_count.str();
    j["face_dim"] = r.face_dim;
    j["polytope_dim"] = r.polytope_dim;
    j["is_facet"] = r.is_facet;
    return j;
}

CutIneq to_cut(const ParsedIneq& p) { return p.cut ? *p.cut : cg_to_cut(*p.cg); }

int cmd_generate(const std::string& family, const std::vector<std::string>& params,
                 const std::string& ba, const std::string& bb, bool as_json) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw CLI::ValidationError("family '" + family + "' takes " + std::to_string(n) + " parameter(s)");
    };
    auto num = [&](std::size_t i) { return std::stoi(params.at(i)); };
    std::vector<ParsedIneq> out;
    if (family == "hypermetric" || family == "hypermetric-bell") {
        WeightVector b{parse_weights(ba), parse_weights(bb)};
        if (family == "hypermetric") out.push_back(wrap(hypermetric(b), family));
        else out.push_back(wrap(hypermetric_bell(b), family));
    } else if (family == "pure-hypermetric-bell") {
        need(3);
        out.push_back(wrap(pure_hypermetric_bell(num(0), num(1), num(2)), family));
    } else if (family == "cliqueweb") {
        need(3);
        out.push_back(wrap(cliqueweb_bell({num(0), num(1), num(2)}), family));
    } else if (family == "immm22") {
        need(1);
        out.push_back(wrap(immm22(num(0)), family));
    } else {
        throw CLI::ValidationError("unknown family '" + family + "'");
    }
    print_ineqs(out, as_json);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for cut-polytope facets and tight Bell inequalities"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");

    // generate
    auto* gen = app.add_subcommand("generate", "generate a family member");
    std::string gen_family, gen_ba, gen_bb;
    std::vector<std::string> gen_params;
    gen->add_option("family", gen_family,
                    "hypermetric | hypermetric-bell | pure-hypermetric-bell | cliqueweb | immm22")
        ->required();
    gen->add_option("params", gen_params, "integer parameters");
    gen->add_option("--ba", gen_ba, "comma-separated Alice weights");
    gen->add_option("--bb", gen_bb, "comma-separated Bob weights");

    // te
    auto* te = app.add_subcommand("te", "triangular elimination of cut-form inequalities");
    std::string te_in;
    te->add_option("input", te_in, "input file ('-' = stdin)");

    // convert
    auto* conv = app.add_subcommand("convert", "convert cut form <-> CG form");
    std::string conv_in, conv_format = "record";
    conv->add_option("input", conv_in, "input file ('-' = stdin)");
    conv->add_option("--format", conv_format, "record | cg-matrix");

    // check
    auto* chk = app.add_subcommand("check", "validity and tightness report (exit 1 if any non-facet)");
    std::string chk_in;
    int chk_budget = 26;
    chk->add_option("input", chk_in, "input file ('-' = stdin)");
    chk->add_option("--budget", chk_budget, "enumeration cap (log2 assignments)");

    // classify
    auto* cls = app.add_subcommand("classify", "partition inequalities into symmetry classes");
    std::string cls_in, cls_mode = "party";
    cls->add_option("input", cls_in, "input file ('-' = stdin)");
    cls->add_option("--mode", cls_mode, "full | party")->check(CLI::IsMember({"full", "party"}));

    // census
    auto* cen = app.add_subcommand("census", "classify triangular eliminations of cut-polytope facets");
    int cen_n = 0;
    std::string cen_file;
    bool cen_long = false;
    bool cen_x_outside = true, cen_drop = true;
    cen->add_option("n", cen_n, "number of complete-graph nodes (3..7)");
    cen->add_option("--facets", cen_file, "external facet list (record format) instead of n");
    cen->add_flag("--long-running,!--no-long-running", cen_long, "allow hours-scale sizes");
    cen->add_flag("--allow-x-outside,!--no-allow-x-outside", cen_x_outside,
                  "labellings with all support nodes as observables");
    cen->add_flag("--drop-nonfacets,!--no-drop-nonfacets", cen_drop, "drop non-tight eliminations");

    // hull
    auto* hul = app.add_subcommand("hull", "facets of the cut polytope (or of a point list)");
    int hul_n = 0;
    std::string hul_points;
    bool hul_long = false;
    hul->add_option("n", hul_n, "number of complete-graph nodes (2..7)");
    hul->add_option("--points", hul_points, "file of whitespace-separated rational rows");
    hul->add_flag("--long-running", hul_long, "allow hours-scale sizes");

    // fix
    auto* fix = app.add_subcommand("fix", "fix observables to deterministic outcomes");
    std::string fix_in;
    std::vector<std::string> fix_sets;
    fix->add_option("input", fix_in, "input file ('-' = stdin)");
    fix->add_option("--set", fix_sets, "observable=value, e.g. A3=0 (repeatable)")->required();

    // includes-chsh
    auto* inc = app.add_subcommand("includes-chsh", "search for a CHSH reduction (exit 1 if none)");
    std::string inc_in;
    int inc_budget = 12;
    inc->add_option("input", inc_in, "input file ('-' = stdin)");
    inc->add_option("--budget", inc_budget, "max observables for exhaustive search");

    // catalog
    auto* cat = app.add_subcommand("catalog", "named inequalities from the literature");
    std::string cat_name, cat_format = "record";
    bool cat_list = false;
    cat->add_option("name", cat_name, "catalog entry name");
    cat->add_flag("--list", cat_list, "list entry names");
    cat->add_option("--format", cat_format, "record | cg-matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_family, gen_params, gen_ba, gen_bb, as_json);

        if (te->parsed()) {
            std::vector<ParsedIneq> out;
            for (const ParsedIneq& p : read_input(te_in)) {
                if (!p.cut) throw std::runtime_error("te requires cut-form input");
                out.push_back(wrap(triangular_eliminate(*p.cut), p.name));
            }
            print_ineqs(out, as_json);
            return kExitOk;
        }

        if (conv->parsed()) {
            std::vector<ParsedIneq> out;
            for (const ParsedIneq& p : read_input(conv_in)) {
                if (p.cut) out.push_back(wrap(cut_to_cg(*p.cut), p.name));
                else out.push_back(wrap(cg_to_cut(*p.cg), p.name));
            }
            print_ineqs(out, as_json, conv_format);
            return kExitOk;
        }

        if (chk->parsed()) {
            bool all_facets = true;
            json reports = json::array();
            for (const ParsedIneq& p : read_input(chk_in)) {
                AnalysisOptions opt;
                opt.enumeration_cap = chk_budget;
                TightnessReport r = tightness_report(to_cut(p), opt);
                all_facets = all_facets && r.is_facet;
                if (as_json) {
                    json j = tightness_json(r);
                    if (!p.name.empty()) j["name"] = p.name;
                    reports.push_back(std::move(j));
                } else {
                    if (!p.name.empty()) std::cout << p.name << ": ";
                    std::cout << "valid=" << (r.valid ? "yes" : "no") << " max=" << rat_str(r.max_value)
                              << " roots=" << r.root_count.str() << " face_dim=" << r.face_dim << "/"
                              << r.polytope_dim << " facet=" << (r.is_facet ? "yes" : "no") << '\n';
                }
            }
            if (as_json) std::cout << reports.dump(2) << '\n';
            return all_facets ? kExitOk : kExitNegative;
        }

        if (cls->parsed()) {
            GroupMode mode = cls_mode == "full" ? GroupMode::full : GroupMode::party;
            std::vector<CutIneq> ineqs;
            for (const ParsedIneq& p : read_input(cls_in)) ineqs.push_back(to_cut(p));
            std::vector<ClassInfo> classes = classify(ineqs, mode);
            if (as_json) {
                json out = json::array();
                for (const ClassInfo& c : classes) {
                    json j;
                    j["representative"] = ineq_json(wrap(c.representative));
                    j["members"] = c.members;
                    out.push_back(std::move(j));
                }
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << "# " << classes.size() << " classes from " << ineqs.size() << " inequalities\n";
                for (std::size_t k = 0; k < classes.size(); ++k) {
                    std::cout << '\n';
                    std::ostringstream mem;
                    for (std::size_t m : classes[k].members) mem << ' ' << m;
                    std::cout << "# class " << k << " members:" << mem.str() << '\n'
                              << emit_record(classes[k].representative);
                }
            }
            return kExitOk;
        }

        if (cen->parsed()) {
            CensusOptions opt;
            opt.allow_x_outside = cen_x_outside;
            opt.drop_nonfacets = cen_drop;
            CensusResult res;
            if (!cen_file.empty()) {
                std::vector<CutIneq> reps;
                for (const ParsedIneq& p : read_input(cen_file)) {
                    if (!p.cut) throw std::runtime_error("census --facets requires cut-form records");
                    reps.push_back(*p.cut);
                }
                res = census_from_classes(reps, opt);
            } else if (cen_n >= 3) {
                res = census(cen_n, opt, cen_long);
            } else {
                throw CLI::ValidationError("census needs n >= 3 or --facets");
            }
            if (as_json) {
                json out;
                out["class_count"] = res.classes.size();
                out["dropped_count"] = res.dropped.size();
                json cl = json::array();
                for (const CensusClass& c : res.classes) {
                    json j;
                    j["source"] = ineq_json(wrap(c.source));
                    j["te"] = ineq_json(wrap(c.te));
                    j["members"] = c.members;
                    j["te_is_facet"] = c.te_is_facet;
                    cl.push_back(std::move(j));
                }
                out["classes"] = std::move(cl);
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << "# " << res.classes.size() << " classes (" << res.dropped.size()
                          << " dropped as non-tight)\n";
                for (std::size_t k = 0; k < res.classes.size(); ++k) {
                    std::cout << "\n# class " << k << " members=" << res.classes[k].members << '\n'
                              << emit_record(res.classes[k].te);
                }
            }
            return kExitOk;
        }

        if (hul->parsed()) {
            if (!hul_points.empty()) {
                std::ifstream in(hul_points);
                if (!in) throw std::runtime_error("cannot open points file '" + hul_points + "'");
                std::vector<std::vector<Rat>> points;
                std::string line;
                while (std::getline(in, line)) {
                    std::size_t first = line.find_first_not_of(" \t");
                    if (first == std::string::npos || line[first] == '#') continue;
                    std::istringstream ls(line);
                    std::vector<Rat> row;
                    std::string tok;
                    while (ls >> tok) row.push_back(Rat(tok));
                    points.push_back(std::move(row));
                }
                RawHRep h = dd_hull(points);
                if (as_json) {
                    json out;
                    out["dim"] = h.dim;
                    out["vertex_count"] = h.vertex_count;
                    json fs = json::array();
                    for (std::size_t k = 0; k < h.normals.size(); ++k) {
                        json j;
                        json nr = json::array();
                        for (const Rat& v : h.normals[k]) nr.push_back(rat_json(v));
                        j["normal"] = std::move(nr);
                        j["rhs"] = rat_json(h.rhs[k]);
                        fs.push_back(std::move(j));
                    }
                    out["facets"] = std::move(fs);
                    std::cout << out.dump(2) << '\n';
                } else {
                    std::cout << "# dim " << h.dim << ", " << h.vertex_count << " points, "
                              << h.facet_count() << " facets\n";
                    for (std::size_t k = 0; k < h.normals.size(); ++k) {
                        for (const Rat& v : h.normals[k]) std::cout << rat_str(v) << ' ';
                        std::cout << "<= " << rat_str(h.rhs[k]) << '\n';
                    }
                }
                return kExitOk;
            }
            if (hul_n < 2) throw CLI::ValidationError("hull needs n >= 2 or --points");
            CutFacets cf = cut_polytope_facets(hul_n, hul_long);
            if (as_json) {
                json out;
                out["dim"] = cf.hrep.dim;
                out["vertex_count"] = cf.hrep.vertex_count;
                out["facet_count"] = cf.hrep.facets.size();
                out["class_count"] = cf.classes.size();
                json cl = json::array();
                for (const ClassInfo& c : cf.classes) {
                    json j;
                    j["representative"] = ineq_json(wrap(c.representative));
                    j["orbit_size"] = c.members.size();
                    cl.push_back(std::move(j));
                }
                out["classes"] = std::move(cl);
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << "# " << cf.hrep.facets.size() << " facets in " << cf.classes.size()
                          << " classes (dim " << cf.hrep.dim << ")\n";
                for (const CutIneq& f : cf.hrep.facets) std::cout << '\n' << emit_record(f);
            }
            return kExitOk;
        }

        if (fix->parsed()) {
            std::vector<ParsedIneq> out;
            for (const ParsedIneq& p : read_input(fix_in)) {
                if (!p.cg) throw std::runtime_error("fix requires CG-form input");
                CgIneq cur = *p.cg;
                for (const std::string& s : fix_sets) {
                    std::size_t eq = s.find('=');
                    if (eq == std::string::npos) throw std::runtime_error("--set expects observable=value");
                    auto nodes = detail::parse_label(s.substr(0, eq), 0);
                    if (nodes.size() != 1) throw std::runtime_error("--set expects a single observable");
                    cur = fix_observable(cur, nodes[0], std::stoi(s.substr(eq + 1)));
                }
                out.push_back(wrap(std::move(cur), p.name));
            }
            print_ineqs(out, as_json);
            return kExitOk;
        }

        if (inc->parsed()) {
            bool all_found = true;
            json reports = json::array();
            for (const ParsedIneq& p : read_input(inc_in)) {
                if (!p.cg) throw std::runtime_error("includes-chsh requires CG-form input");
                ChshResult r = includes_chsh(*p.cg, inc_budget);
                const char* status = r.status == ChshStatus::found  ? "found"
                                     : r.status == ChshStatus::none ? "none"
                                                                    : "unknown";
                all_found = all_found && r.status == ChshStatus::found;
                json j;
                j["status"] = status;
                if (r.witness) {
                    json fx = json::array();
                    for (const auto& [node, value] : r.witness->fixing)
                        fx.push_back({{"observable", node_name(node)}, {"value", value}});
                    j["fixing"] = std::move(fx);
                    j["alice_kept"] = {node_name(r.witness->alice_kept[0]), node_name(r.witness->alice_kept[1])};
                    j["bob_kept"] = {node_name(r.witness->bob_kept[0]), node_name(r.witness->bob_kept[1])};
                }
                if (as_json) {
                    if (!p.name.empty()) j["name"] = p.name;
                    reports.push_back(std::move(j));
                } else {
                    if (!p.name.empty()) std::cout << p.name << ": ";
                    std::cout << status;
                    if (r.witness) {
                        std::cout << " fixing";
                        for (const auto& [node, value] : r.witness->fixing)
                            std::cout << ' ' << node_name(node) << '=' << value;
                        std::cout << " keeping " << node_name(r.witness->alice_kept[0]) << ','
                                  << node_name(r.witness->alice_kept[1]) << " / "
                                  << node_name(r.witness->bob_kept[0]) << ','
                                  << node_name(r.witness->bob_kept[1]);
                    }
                    std::cout << '\n';
                }
            }
            if (as_json) std::cout << reports.dump(2) << '\n';
            return all_found ? kExitOk : kExitNegative;
        }

        if (cat->parsed()) {
            static const std::vector<std::string> names = {
                "chsh", "i3322", "i3422_1", "i3422_2", "i3422_3",
                "pentagonal", "grishukhin", "triangle", "positive_probability"};
            if (cat_list) {
                for (const std::string& n : names) std::cout << n << '\n';
                return kExitOk;
            }
            if (cat_name.empty()) throw CLI::ValidationError("catalog needs a name or --list");
            CatalogEntry e = catalog(cat_name);
            ParsedIneq p;
            p.name = e.name;
            p.cut = e.cut;
            p.cg = e.cg;
            print_ineqs({p}, as_json, cat_format);
            return kExitOk;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
