#include "cmatch/io.hpp"

#include <fstream>
#include <sstream>

namespace cmatch::io {

Graph read_edge_list(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing header");
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.node_count() << " " << g.edge_count() << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
}

Matching read_matching(std::istream& in, const Graph& g) {
    Matching m = Matching::empty(g);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) continue;
        auto e = g.edge_between(u, v);
        if (!e) throw std::invalid_argument("matching: no such edge " + line);
        m.add(g, *e);
    }
    return m;
}

Matching read_matching_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_matching(in, g);
}

void write_matching(std::ostream& out, const Graph& g, const Matching& m) {
    for (EdgeId e : m.edges()) out << g.edge(e).u << " " << g.edge(e).v << "\n";
}

}  // namespace cmatch::io
