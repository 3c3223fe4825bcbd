#pragma once

#include <iosfwd>
#include <string>

#include "cmatch/graph.hpp"

namespace cmatch::io {

// Edge-list text format: first line "n m", then m lines "u v".
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// Matching fixture format: one edge "u v" per line.
Matching read_matching(std::istream& in, const Graph& g);
Matching read_matching_file(const std::string& path, const Graph& g);
void write_matching(std::ostream& out, const Graph& g, const Matching& m);

}  // namespace cmatch::io
