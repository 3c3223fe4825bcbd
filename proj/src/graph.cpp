#include "cmatch/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace cmatch {

namespace {

int ceil_log2(int x) {
    int b = 0;
    while ((1 << b) < x) ++b;
    return b;
}

}  // namespace

Graph Graph::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (n < 2) throw std::invalid_argument("Graph: need at least 2 nodes");
    Graph g;
    g.base_ = true;
    g.node_capacity_ = n;
    g.edge_capacity_ = static_cast<int>(edges.size());
    g.present_.assign(n, 1);
    g.nodes_.resize(n);
    for (int v = 0; v < n; ++v) g.nodes_[v] = v;
    g.incident_.assign(n, {});
    g.edge_slot_.assign(edges.size(), -1);

    std::set<std::pair<NodeId, NodeId>> seen;
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("Graph: edge endpoint out of range: (" +
                                        std::to_string(u) + "," + std::to_string(v) + ")");
        if (u == v) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(u));
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("Graph: parallel edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        EdgeId id = static_cast<EdgeId>(i);
        g.edges_.push_back(Edge{id, u, v});
        g.edge_slot_[id] = static_cast<int>(g.edges_.size()) - 1;
        g.incident_[u].push_back(id);
        g.incident_[v].push_back(id);
    }
    if (!g.connected()) throw std::invalid_argument("Graph: base graph must be connected");
    return g;
}

Graph Graph::induced(const std::vector<NodeId>& keep) const {
    Graph h;
    h.base_ = false;
    h.node_capacity_ = node_capacity_;
    h.edge_capacity_ = edge_capacity_;
    h.present_.assign(node_capacity_, 0);
    for (NodeId v : keep) {
        check_node(v);
        if (h.present_[v]) throw std::invalid_argument("induced: duplicate node id");
        h.present_[v] = 1;
    }
    h.nodes_ = keep;
    std::sort(h.nodes_.begin(), h.nodes_.end());
    h.incident_.assign(node_capacity_, {});
    h.edge_slot_.assign(edge_capacity_, -1);
    for (const Edge& e : edges_) {
        if (h.present_[e.u] && h.present_[e.v]) {
            h.edge_slot_[e.id] = static_cast<int>(h.edges_.size());
            h.edges_.push_back(e);
            h.incident_[e.u].push_back(e.id);
            h.incident_[e.v].push_back(e.id);
        }
    }
    return h;
}

Graph Graph::edge_subgraph(const std::vector<EdgeId>& edge_ids) const {
    Graph h;
    h.base_ = false;
    h.node_capacity_ = node_capacity_;
    h.edge_capacity_ = edge_capacity_;
    h.present_ = present_;
    h.nodes_ = nodes_;
    h.incident_.assign(node_capacity_, {});
    h.edge_slot_.assign(edge_capacity_, -1);
    std::vector<EdgeId> ids = edge_ids;
    std::sort(ids.begin(), ids.end());
    for (EdgeId id : ids) {
        if (!has_edge(id)) throw std::invalid_argument("edge_subgraph: unknown edge id");
        if (h.edge_slot_[id] >= 0) continue;
        const Edge& e = edge(id);
        h.edge_slot_[id] = static_cast<int>(h.edges_.size());
        h.edges_.push_back(e);
        h.incident_[e.u].push_back(id);
        h.incident_[e.v].push_back(id);
    }
    return h;
}

void Graph::check_node(NodeId v) const {
    if (!has_node(v)) throw std::invalid_argument("Graph: unknown node id " + std::to_string(v));
}

const Edge& Graph::edge(EdgeId e) const {
    if (!has_edge(e)) throw std::invalid_argument("Graph: unknown edge id " + std::to_string(e));
    return edges_[edge_slot_[e]];
}

const std::vector<EdgeId>& Graph::incident(NodeId v) const {
    check_node(v);
    return incident_[v];
}

std::optional<EdgeId> Graph::edge_between(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    for (EdgeId e : incident_[a])
        if (edge(e).joins(a, b)) return e;
    return std::nullopt;
}

int Graph::id_bits() const { return std::max(1, ceil_log2(node_capacity_)); }

bool Graph::connected() const {
    if (nodes_.empty()) return true;
    std::vector<char> vis(node_capacity_, 0);
    std::queue<NodeId> q;
    q.push(nodes_[0]);
    vis[nodes_[0]] = 1;
    int reached = 1;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (EdgeId e : incident_[v]) {
            NodeId w = edge(e).other(v);
            if (!vis[w]) {
                vis[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == static_cast<int>(nodes_.size());
}

Matching Matching::empty(const Graph& g) {
    Matching m;
    m.in_set_.assign(g.edge_capacity(), 0);
    m.partner_.assign(g.node_capacity(), -1);
    return m;
}

Matching Matching::from_edges(const Graph& g, const std::vector<EdgeId>& edge_ids) {
    Matching m = empty(g);
    for (EdgeId e : edge_ids) m.add(g, e);
    return m;
}

void Matching::add(const Graph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    if (contains(e)) throw std::logic_error("Matching: edge already present");
    if (is_matched(ed.u) || is_matched(ed.v))
        throw std::logic_error("Matching: endpoint already matched, edge " + std::to_string(e));
    in_set_[e] = 1;
    partner_[ed.u] = ed.v;
    partner_[ed.v] = ed.u;
    ++size_;
}

void Matching::remove(const Graph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    if (!contains(e)) throw std::logic_error("Matching: edge not present");
    in_set_[e] = 0;
    partner_[ed.u] = -1;
    partner_[ed.v] = -1;
    --size_;
}

std::vector<EdgeId> Matching::edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < static_cast<int>(in_set_.size()); ++e)
        if (in_set_[e]) out.push_back(e);
    return out;
}

Matching Matching::restricted_to(const Graph& h) const {
    Matching m = Matching::empty(h);
    for (EdgeId e = 0; e < static_cast<int>(in_set_.size()); ++e)
        if (in_set_[e] && h.has_edge(e)) m.add(h, e);
    return m;
}

std::vector<NodeId> Matching::unmatched_nodes(const Graph& g) const {
    std::vector<NodeId> out;
    for (NodeId v : g.nodes())
        if (!is_matched(v)) out.push_back(v);
    return out;
}

void Matching::validate(const Graph& g) const {
    int count = 0;
    std::vector<int> deg(g.node_capacity(), 0);
    for (EdgeId e = 0; e < static_cast<int>(in_set_.size()); ++e) {
        if (!in_set_[e]) continue;
        ++count;
        const Edge& ed = g.edge(e);
        ++deg[ed.u];
        ++deg[ed.v];
        if (partner_[ed.u] != ed.v || partner_[ed.v] != ed.u)
            throw std::logic_error("Matching: partner map inconsistent with edge set");
    }
    for (NodeId v : g.nodes())
        if (deg[v] > 1) throw std::logic_error("Matching: node in two edges");
    if (count != size_) throw std::logic_error("Matching: size mismatch");
}

Walk Walk::from_nodes(const Graph& g, const std::vector<NodeId>& seq) {
    Walk w;
    w.nodes = seq;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        auto e = g.edge_between(seq[i], seq[i + 1]);
        if (!e)
            throw std::invalid_argument("Walk: no edge between " + std::to_string(seq[i]) +
                                        " and " + std::to_string(seq[i + 1]));
        w.edges.push_back(*e);
    }
    return w;
}

void Walk::validate_in(const Graph& g) const {
    if (nodes.empty()) throw std::invalid_argument("Walk: empty node sequence");
    if (edges.size() + 1 != nodes.size())
        throw std::invalid_argument("Walk: node/edge count mismatch");
    for (NodeId v : nodes)
        if (!g.has_node(v)) throw std::invalid_argument("Walk: unknown node " + std::to_string(v));
    for (size_t i = 0; i < edges.size(); ++i) {
        if (!g.has_edge(edges[i]))
            throw std::invalid_argument("Walk: unknown edge " + std::to_string(edges[i]));
        if (!g.edge(edges[i]).joins(nodes[i], nodes[i + 1]))
            throw std::invalid_argument("Walk: edge " + std::to_string(edges[i]) +
                                        " does not join consecutive nodes");
    }
}

bool Walk::is_path() const {
    std::set<NodeId> s(nodes.begin(), nodes.end());
    return s.size() == nodes.size();
}

bool Walk::is_alternating(const Matching& m) const {
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        int a = m.contains(edges[i]) ? 1 : 0;
        int b = m.contains(edges[i + 1]) ? 1 : 0;
        if (a + b != 1) return false;
    }
    return true;
}

bool Walk::is_theta_alternating(const Matching& m, int theta) const {
    return is_alternating(m) && (length() % 2) == theta;
}

Walk Walk::reversed() const {
    Walk w;
    w.nodes.assign(nodes.rbegin(), nodes.rend());
    w.edges.assign(edges.rbegin(), edges.rend());
    return w;
}

AltDist::AltDist(NodeId source, int node_capacity) : source_(source) {
    d_.assign(node_capacity, {kInfDist, kInfDist});
    d_[source][1] = 0;  // sentinel: r^1(f,f)=0, r^0(f,f)=inf
}

void AltDist::set(NodeId v, int theta, int value) {
    if (value < kInfDist && value % 2 != theta)
        throw std::logic_error("AltDist: parity mismatch");
    d_[v][theta] = value;
}

void AltDist::check_invariants(const Graph& g) const {
    if (at(source_, 0) != kInfDist || at(source_, 1) != 0)
        throw std::logic_error("AltDist: source sentinel violated");
    for (NodeId v : g.nodes()) {
        if (v == source_) continue;  // sentinel intentionally breaks parity at f
        if (finite(v, 0) && at(v, 0) % 2 != 0) throw std::logic_error("AltDist: even slot odd");
        if (finite(v, 1) && at(v, 1) % 2 != 1) throw std::logic_error("AltDist: odd slot even");
    }
}

bool is_augmenting(const Graph& g, const Matching& m, const Walk& p) {
    p.validate_in(g);
    if (p.length() == 0) return false;
    if (!p.is_path()) return false;
    if (!p.is_alternating(m)) return false;
    return !m.is_matched(p.front()) && !m.is_matched(p.back());
}

Matching augment_along(const Graph& g, const Matching& m, const Walk& p) {
    if (!is_augmenting(g, m, p))
        throw std::logic_error("augment_along: walk is not an augmenting path");
    Matching out = m;
    std::vector<EdgeId> to_add;
    for (EdgeId e : p.edges) {
        if (out.contains(e))
            out.remove(g, e);
        else
            to_add.push_back(e);
    }
    for (EdgeId e : to_add) out.add(g, e);
    out.validate(g);
    if (out.size() != m.size() + 1)
        throw std::logic_error("augment_along: size did not grow by one");
    return out;
}

}  // namespace cmatch
