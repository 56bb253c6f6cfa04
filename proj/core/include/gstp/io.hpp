#pragma once

#include <iosfwd>
#include <string>

#include "gstp/instance.hpp"

namespace gstp {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Instance file format:
//   c <comment>                      ignored
//   p gstp <n> <m> <t>               header, exactly once, first non-comment line
//   e <u> <v>                        m edge lines, 0-based; repeats = multiplicity
//   s <d> <k> <v1> ... <vk>          t terminal-set lines, demand d, k vertices
// Emission is canonical: sorted edges, sorted terminal sets, LF endings.
GstpInstance read_instance(std::istream& in);
GstpInstance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const GstpInstance& inst);
void write_instance_file(const std::string& path, const GstpInstance& inst);

/// Graphs travel in the same format with t = 0.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

// Decomposition file format (shared by tree decompositions and tree-cut
// decompositions; they differ in the validation applied on load):
//   p td <nodes> <root>   or   p tcd <nodes> <root>
//   b <node> <v...>                  bag contents (may be empty)
//   l <parent> <child>               tree links
struct RawDecomposition {
    bool tree_cut = false;
    int root = 0;
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> links;  // (parent, child)
};

RawDecomposition read_decomposition(std::istream& in);
RawDecomposition read_decomposition_file(const std::string& path);
void write_decomposition(std::ostream& out, const RawDecomposition& d);

// Solution (witness) format: one part per line, terminal index followed
// by the edge endpoints in pairs:
//   <terminal-index> <u1> <v1> <u2> <v2> ...
Solution read_solution(std::istream& in);
Solution read_solution_file(const std::string& path);
void write_solution(std::ostream& out, const Solution& sol);

}  // namespace gstp
