#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cutbell/graph.hpp"
#include "cutbell/inequality.hpp"

namespace cutbell {

struct parse_error : std::runtime_error {
    int line;
    parse_error(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// One parsed block: exactly one representation is set.
struct ParsedIneq {
    std::optional<CutIneq> cut;
    std::optional<CgIneq> cg;
    std::string name;  // optional metadata
};

namespace detail {

inline Rat parse_rat(const std::string& tok, int line) {
    for (char c : tok)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw parse_error(line, "non-rational token '" + tok + "'");
    try {
        Rat r(tok);
        return r;
    } catch (const std::exception&) {
        throw parse_error(line, "non-rational token '" + tok + "'");
    }
}

// Split a label like "XA1", "A2", "A1B3", "A1A2" into one or two node names.
inline std::vector<NodeId> parse_label(const std::string& label, int line) {
    std::vector<NodeId> nodes;
    std::size_t pos = 0;
    while (pos < label.size()) {
        char c = label[pos];
        if (c == 'X') {
            nodes.push_back({Party::X, 0});
            ++pos;
        } else if (c == 'A' || c == 'B') {
            std::size_t start = ++pos;
            while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) ++pos;
            if (pos == start) throw parse_error(line, "bad label '" + label + "'");
            nodes.push_back({c == 'A' ? Party::A : Party::B, std::stoi(label.substr(start, pos - start))});
        } else {
            throw parse_error(line, "bad label '" + label + "'");
        }
    }
    if (nodes.empty() || nodes.size() > 2) throw parse_error(line, "bad label '" + label + "'");
    return nodes;
}

struct RawLine {
    int number;
    std::vector<std::string> tokens;
};

inline ParsedIneq parse_block(const std::vector<RawLine>& lines) {
    const RawLine& head = lines.front();
    const auto& h = head.tokens;
    if (h[0] != "ineq") throw parse_error(head.number, "expected 'ineq' header");
    ParsedIneq out;
    bool saw_rhs = false;
    std::size_t next = 1;

    auto meta_and_rhs = [&](std::size_t i, auto&& coeff_line) {
        for (; i < lines.size(); ++i) {
            const auto& t = lines[i].tokens;
            int ln = lines[i].number;
            if (t[0] == "name") {
                if (t.size() != 2) throw parse_error(ln, "name takes one token");
                out.name = t[1];
            } else if (t[0] == "rhs") {
                if (saw_rhs) throw parse_error(ln, "duplicate rhs");
                if (t.size() != 2) throw parse_error(ln, "rhs takes one value");
                saw_rhs = true;
                Rat v = parse_rat(t[1], ln);
                if (out.cut) out.cut->rhs = v;
                else out.cg->rhs = v;
            } else {
                if (t.size() != 2) throw parse_error(ln, "expected '<label> <value>'");
                coeff_line(t[0], parse_rat(t[1], ln), ln);
            }
        }
        if (!saw_rhs) throw parse_error(head.number, "block has no rhs line");
    };

    if (h.size() >= 2 && h[1] == "cut") {
        if (h.size() != 5) throw parse_error(head.number, "expected 'ineq cut <kind> <nA> <nB>'");
        GraphKind kind;
        if (h[2] == "complete") kind = GraphKind::complete;
        else if (h[2] == "tripartite") kind = GraphKind::tripartite;
        else throw parse_error(head.number, "unknown graph kind '" + h[2] + "'");
        int nA, nB;
        try {
            nA = std::stoi(h[3]);
            nB = std::stoi(h[4]);
        } catch (const std::exception&) {
            throw parse_error(head.number, "malformed scenario sizes");
        }
        Graph g = build_graph(kind, nA, nB);
        out.cut = CutIneq(g);
        std::vector<bool> seen(static_cast<size_t>(g.edge_count()), false);
        meta_and_rhs(next, [&](const std::string& label, Rat v, int ln) {
            auto nodes = parse_label(label, ln);
            if (nodes.size() != 2) throw parse_error(ln, "edge label needs two nodes: '" + label + "'");
            int u, vtx;
            try {
                u = g.node_of(nodes[0]);
                vtx = g.node_of(nodes[1]);
            } catch (const std::exception&) {
                throw parse_error(ln, "unknown node in label '" + label + "'");
            }
            if (!g.has_edge(u, vtx)) throw parse_error(ln, "no such edge '" + label + "' in this graph");
            int e = g.edge_index(u, vtx);
            if (seen[static_cast<size_t>(e)]) throw parse_error(ln, "duplicate edge '" + label + "'");
            seen[static_cast<size_t>(e)] = true;
            out.cut->coeffs[static_cast<size_t>(e)] = std::move(v);
        });
        return out;
    }
    if (h.size() >= 2 && h[1] == "cg") {
        if (h.size() != 4) throw parse_error(head.number, "expected 'ineq cg <mA> <mB>'");
        int mA, mB;
        try {
            mA = std::stoi(h[2]);
            mB = std::stoi(h[3]);
        } catch (const std::exception&) {
            throw parse_error(head.number, "malformed scenario sizes");
        }
        if (mA < 1 || mB < 1) throw parse_error(head.number, "scenario sizes must be positive");
        out.cg = CgIneq(mA, mB);
        std::vector<bool> seen(static_cast<size_t>(mA + mB + mA * mB), false);
        meta_and_rhs(next, [&](const std::string& label, Rat v, int ln) {
            auto nodes = parse_label(label, ln);
            auto idx_of = [&](const NodeId& n) -> int {
                if (n.party == Party::A && n.index >= 1 && n.index <= mA) return n.index;
                if (n.party == Party::B && n.index >= 1 && n.index <= mB) return -n.index;
                throw parse_error(ln, "unknown observable in label '" + label + "'");
            };
            int slot;
            if (nodes.size() == 1) {
                int i = idx_of(nodes[0]);
                if (i > 0) {
                    out.cg->alice_marg[static_cast<size_t>(i - 1)] = std::move(v);
                    slot = i - 1;
                } else {
                    out.cg->bob_marg[static_cast<size_t>(-i - 1)] = std::move(v);
                    slot = mA + (-i - 1);
                }
            } else {
                int i = idx_of(nodes[0]), j = idx_of(nodes[1]);
                if (i < 0 || j > 0) throw parse_error(ln, "joint label must be Alice then Bob: '" + label + "'");
                out.cg->joint[static_cast<size_t>(i - 1)][static_cast<size_t>(-j - 1)] = std::move(v);
                slot = mA + mB + (i - 1) * mB + (-j - 1);
            }
            if (seen[static_cast<size_t>(slot)]) throw parse_error(ln, "duplicate entry '" + label + "'");
            seen[static_cast<size_t>(slot)] = true;
        });
        return out;
    }
    throw parse_error(head.number, "expected 'ineq cut ...' or 'ineq cg ...'");
}

}  // namespace detail

// Parse a whole stream of blank-line-separated blocks. Lines starting with
// '#' are comments; omitted coefficients are zero.
inline std::vector<ParsedIneq> parse_ineqs(std::istream& in) {
    std::vector<ParsedIneq> out;
    std::vector<detail::RawLine> block;
    std::string line;
    int number = 0;
    auto flush = [&] {
        if (!block.empty()) out.push_back(detail::parse_block(block));
        block.clear();
    };
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            flush();
            continue;
        }
        if (line[first] == '#') continue;
        detail::RawLine rl{number, {}};
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) rl.tokens.push_back(tok);
        block.push_back(std::move(rl));
    }
    flush();
    return out;
}

inline std::vector<ParsedIneq> parse_ineqs(const std::string& text) {
    std::istringstream in(text);
    return parse_ineqs(in);
}

// Parse exactly one inequality.
inline ParsedIneq parse_ineq(const std::string& text) {
    auto v = parse_ineqs(text);
    if (v.size() != 1) throw parse_error(1, "expected exactly one inequality block");
    return std::move(v.front());
}

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Canonical record: header, optional name, rhs, then the nonzero
// coefficients in the fixed edge order.
inline std::string emit_record(const CutIneq& f, const std::string& name = "") {
    const Graph& g = f.graph;
    std::ostringstream os;
    os << "ineq cut " << (g.kind() == GraphKind::complete ? "complete" : "tripartite") << ' '
       << g.nA() << ' ' << g.nB() << '\n';
    if (!name.empty()) os << "name " << name << '\n';
    os << "rhs " << rat_str(f.rhs) << '\n';
    for (int e = 0; e < g.edge_count(); ++e)
        if (f.coeffs[static_cast<size_t>(e)] != 0)
            os << g.edge_name(e) << ' ' << rat_str(f.coeffs[static_cast<size_t>(e)]) << '\n';
    return os.str();
}

inline std::string emit_record(const CgIneq& f, const std::string& name = "") {
    std::ostringstream os;
    os << "ineq cg " << f.mA << ' ' << f.mB << '\n';
    if (!name.empty()) os << "name " << name << '\n';
    os << "rhs " << rat_str(f.rhs) << '\n';
    for (int i = 1; i <= f.mA; ++i)
        if (f.alice_marg[static_cast<size_t>(i - 1)] != 0)
            os << 'A' << i << ' ' << rat_str(f.alice_marg[static_cast<size_t>(i - 1)]) << '\n';
    for (int j = 1; j <= f.mB; ++j)
        if (f.bob_marg[static_cast<size_t>(j - 1)] != 0)
            os << 'B' << j << ' ' << rat_str(f.bob_marg[static_cast<size_t>(j - 1)]) << '\n';
    for (int i = 1; i <= f.mA; ++i)
        for (int j = 1; j <= f.mB; ++j)
            if (f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] != 0)
                os << 'A' << i << 'B' << j << ' '
                   << rat_str(f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]) << '\n';
    return os.str();
}

inline std::string emit_record(const ParsedIneq& p) {
    return p.cut ? emit_record(*p.cut, p.name) : emit_record(*p.cg, p.name);
}

// Marginal-bordered table with rows = Alice: the top border holds the Bob
// marginals, the left border the Alice marginals.
inline std::string emit_cg_matrix(const CgIneq& f) {
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(f.mA) + 1,
                                                std::vector<std::string>(static_cast<size_t>(f.mB) + 1));
    for (int j = 1; j <= f.mB; ++j) cells[0][static_cast<size_t>(j)] = rat_str(f.bob_marg[static_cast<size_t>(j - 1)]);
    for (int i = 1; i <= f.mA; ++i) {
        cells[static_cast<size_t>(i)][0] = rat_str(f.alice_marg[static_cast<size_t>(i - 1)]);
        for (int j = 1; j <= f.mB; ++j)
            cells[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                rat_str(f.joint[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]);
    }
    std::vector<std::size_t> width(static_cast<size_t>(f.mB) + 1, 1);
    for (auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t c = 0; c < cells[r].size(); ++c) {
            const std::string& s = (r == 0 && c == 0) ? std::string() : cells[r][c];
            os << std::string(width[c] - s.size() + (c == 0 ? 0 : 2), ' ') << s;
        }
        os << '\n';
    }
    os << "<= " << rat_str(f.rhs) << '\n';
    return os.str();
}

// `format` is "record" or "cg-matrix"; the latter only applies to CG form.
inline std::string emit_ineq(const ParsedIneq& p, const std::string& format = "record") {
    if (format == "record") return emit_record(p);
    if (format == "cg-matrix") {
        if (!p.cg) throw std::invalid_argument("cg-matrix format requires a CG inequality");
        return emit_cg_matrix(*p.cg);
    }
    throw std::invalid_argument("unknown format '" + format + "'");
}

}  // namespace cutbell
