#include "gstp/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace gstp {

namespace {

std::vector<long> parse_ints(const std::string& s, int line) {
    std::istringstream iss(s);
    std::vector<long> out;
    long x;
    while (iss >> x) out.push_back(x);
    std::string rest;
    iss.clear();
    if (iss >> rest) throw ParseError(line, "unexpected token '" + rest + "'");
    return out;
}

struct LineReader {
    std::istream& in;
    int line = 0;

    // returns (tag, rest) or nullopt at eof; skips comments and blanks
    std::optional<std::pair<char, std::string>> next() {
        std::string s;
        while (std::getline(in, s)) {
            ++line;
            if (!s.empty() && s.back() == '\r') s.pop_back();
            size_t i = s.find_first_not_of(" \t");
            if (i == std::string::npos) continue;
            if (s[i] == 'c') continue;
            return std::make_pair(s[i], s.substr(i + 1));
        }
        return std::nullopt;
    }
};

}  // namespace

GstpInstance read_instance(std::istream& in) {
    LineReader r{in};
    auto hdr = r.next();
    if (!hdr || hdr->first != 'p') throw ParseError(r.line, "expected 'p gstp <n> <m> <t>' header");
    std::istringstream hs(hdr->second);
    std::string kind;
    long n, m, t;
    if (!(hs >> kind >> n >> m >> t) || kind != "gstp")
        throw ParseError(r.line, "malformed header, expected 'p gstp <n> <m> <t>'");
    if (n < 0 || m < 0 || t < 0) throw ParseError(r.line, "negative header count");

    Graph g(static_cast<int>(n), false);
    std::vector<VertexSet> ts;
    std::vector<int> ds;
    long seen_e = 0, seen_s = 0;
    while (auto ln = r.next()) {
        auto [tag, rest] = *ln;
        if (tag == 'e') {
            auto v = parse_ints(rest, r.line);
            if (v.size() != 2) throw ParseError(r.line, "edge line needs two endpoints");
            if (v[0] < 0 || v[0] >= n || v[1] < 0 || v[1] >= n)
                throw ParseError(r.line, "edge endpoint out of range");
            if (v[0] == v[1]) throw ParseError(r.line, "loops not allowed in instance files");
            if (g.has_edge(static_cast<int>(v[0]), static_cast<int>(v[1])))
                throw ParseError(r.line, "duplicate edge in instance file");
            g.add_edge(static_cast<int>(v[0]), static_cast<int>(v[1]), 1);
            ++seen_e;
        } else if (tag == 's') {
            auto v = parse_ints(rest, r.line);
            if (v.size() < 2) throw ParseError(r.line, "terminal line needs demand and count");
            long d = v[0], k = v[1];
            if (d < 1) throw ParseError(r.line, "demand must be >= 1");
            if (k < 0 || static_cast<long>(v.size()) != 2 + k)
                throw ParseError(r.line, "terminal vertex count mismatch");
            VertexSet set;
            for (long i = 0; i < k; ++i) {
                if (v[2 + i] < 0 || v[2 + i] >= n)
                    throw ParseError(r.line, "terminal vertex out of range");
                set.push_back(static_cast<int>(v[2 + i]));
            }
            ts.push_back(make_vertex_set(std::move(set)));
            ds.push_back(static_cast<int>(d));
            ++seen_s;
        } else {
            throw ParseError(r.line, std::string("unknown line tag '") + tag + "'");
        }
    }
    if (seen_e != m) throw ParseError(r.line, "edge count does not match header");
    if (seen_s != t) throw ParseError(r.line, "terminal-set count does not match header");
    return GstpInstance(std::move(g), std::move(ts), std::move(ds));
}

Graph read_graph(std::istream& in) {
    LineReader r{in};
    auto hdr = r.next();
    if (!hdr || hdr->first != 'p') throw ParseError(r.line, "expected 'p gstp <n> <m> <t>' header");
    std::istringstream hs(hdr->second);
    std::string kind;
    long n, m, t;
    if (!(hs >> kind >> n >> m >> t) || kind != "gstp")
        throw ParseError(r.line, "malformed header");
    Graph g(static_cast<int>(n), true);
    long seen = 0;
    while (auto ln = r.next()) {
        auto [tag, rest] = *ln;
        if (tag == 's') continue;  // graph readers ignore terminal lines
        if (tag != 'e') throw ParseError(r.line, std::string("unknown line tag '") + tag + "'");
        auto v = parse_ints(rest, r.line);
        if (v.size() != 2) throw ParseError(r.line, "edge line needs two endpoints");
        g.add_edge(static_cast<int>(v[0]), static_cast<int>(v[1]), 1);
        ++seen;
    }
    if (seen != m) throw ParseError(r.line, "edge count does not match header");
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p gstp " << g.vertex_count() << " " << g.edge_count() << " 0\n";
    for (const auto& [e, m] : g.edges())
        for (int i = 0; i < m; ++i) out << "e " << e.u << " " << e.v << "\n";
}

void write_instance(std::ostream& out, const GstpInstance& inst) {
    const Graph& g = inst.graph();
    out << "p gstp " << g.vertex_count() << " " << g.edge_count() << " "
        << inst.terminal_count() << "\n";
    for (const auto& [e, m] : g.edges())
        for (int i = 0; i < m; ++i) out << "e " << e.u << " " << e.v << "\n";
    for (int i = 0; i < inst.terminal_count(); ++i) {
        out << "s " << inst.demand(i) << " " << inst.terminal(i).size();
        for (Vertex v : inst.terminal(i)) out << " " << v;
        out << "\n";
    }
}

GstpInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_instance(in);
}

void write_instance_file(const std::string& path, const GstpInstance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_instance(out, inst);
}

RawDecomposition read_decomposition(std::istream& in) {
    LineReader r{in};
    auto hdr = r.next();
    if (!hdr || hdr->first != 'p')
        throw ParseError(r.line, "expected 'p td|tcd <nodes> <root>' header");
    std::istringstream hs(hdr->second);
    std::string kind;
    long nodes, root;
    if (!(hs >> kind >> nodes >> root) || (kind != "td" && kind != "tcd"))
        throw ParseError(r.line, "malformed header, expected 'p td|tcd <nodes> <root>'");
    if (nodes < 1 || root < 0 || root >= nodes) throw ParseError(r.line, "bad node/root counts");
    RawDecomposition d;
    d.tree_cut = (kind == "tcd");
    d.root = static_cast<int>(root);
    d.bags.assign(static_cast<size_t>(nodes), {});
    std::vector<char> bag_seen(static_cast<size_t>(nodes), 0);
    while (auto ln = r.next()) {
        auto [tag, rest] = *ln;
        auto v = parse_ints(rest, r.line);
        if (tag == 'b') {
            if (v.empty()) throw ParseError(r.line, "bag line needs a node id");
            long node = v[0];
            if (node < 0 || node >= nodes) throw ParseError(r.line, "bag node out of range");
            if (bag_seen[node]) throw ParseError(r.line, "duplicate bag line");
            bag_seen[node] = 1;
            std::vector<Vertex> bag;
            for (size_t i = 1; i < v.size(); ++i) bag.push_back(static_cast<int>(v[i]));
            d.bags[node] = make_vertex_set(std::move(bag));
        } else if (tag == 'l') {
            if (v.size() != 2) throw ParseError(r.line, "link line needs parent and child");
            if (v[0] < 0 || v[0] >= nodes || v[1] < 0 || v[1] >= nodes)
                throw ParseError(r.line, "link node out of range");
            d.links.push_back({static_cast<int>(v[0]), static_cast<int>(v[1])});
        } else {
            throw ParseError(r.line, std::string("unknown line tag '") + tag + "'");
        }
    }
    if (static_cast<long>(d.links.size()) != nodes - 1)
        throw ParseError(r.line, "a tree on n nodes needs n-1 links");
    return d;
}

RawDecomposition read_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_decomposition(in);
}

void write_decomposition(std::ostream& out, const RawDecomposition& d) {
    out << "p " << (d.tree_cut ? "tcd" : "td") << " " << d.bags.size() << " " << d.root << "\n";
    for (size_t i = 0; i < d.bags.size(); ++i) {
        out << "b " << i;
        for (Vertex v : d.bags[i]) out << " " << v;
        out << "\n";
    }
    for (auto [p, c] : d.links) out << "l " << p << " " << c << "\n";
}

Solution read_solution(std::istream& in) {
    Solution sol;
    std::string s;
    int line = 0;
    while (std::getline(in, s)) {
        ++line;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        size_t i = s.find_first_not_of(" \t");
        if (i == std::string::npos || s[i] == 'c') continue;
        auto v = parse_ints(s, line);
        if (v.empty() || (v.size() - 1) % 2 != 0)
            throw ParseError(line, "solution line needs a terminal index and endpoint pairs");
        SolutionPart part;
        part.terminal_index = static_cast<int>(v[0]);
        for (size_t j = 1; j + 1 < v.size(); j += 2)
            part.edges.push_back(Edge(static_cast<int>(v[j]), static_cast<int>(v[j + 1])));
        sol.parts.push_back(std::move(part));
    }
    return sol;
}

Solution read_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_solution(in);
}

void write_solution(std::ostream& out, const Solution& sol) {
    for (const auto& part : sol.parts) {
        out << part.terminal_index;
        for (const Edge& e : part.edges) out << " " << e.u << " " << e.v;
        out << "\n";
    }
}

}  // namespace gstp
