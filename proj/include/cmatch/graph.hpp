#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmatch {

using NodeId = int;
using EdgeId = int;

/// Distance value treated as infinity. Kept well below INT_MAX so that
/// "dist + 1" arithmetic never overflows.
constexpr int kInfDist = std::numeric_limits<int>::max() / 4;

struct Edge {
    EdgeId id = -1;
    NodeId u = -1;
    NodeId v = -1;

    NodeId other(NodeId x) const { return x == u ? v : u; }
    bool joins(NodeId a, NodeId b) const {
        return (u == a && v == b) || (u == b && v == a);
    }
};

/// Immutable simple undirected graph with stable integer node and edge ids.
///
/// A base graph has dense node ids 0..n-1 and must be connected with n >= 2.
/// Subgraphs produced by induced() keep the original ids and are exempt from
/// the connectivity requirement (is_base() reports which kind this is).
class Graph {
  public:
    static Graph from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);

    /// Induced subgraph on `keep`: all edges with both endpoints in `keep`.
    /// Node and edge ids are preserved.
    Graph induced(const std::vector<NodeId>& keep) const;

    /// Subgraph spanning the same node set but restricted to `edge_ids`.
    Graph edge_subgraph(const std::vector<EdgeId>& edge_ids) const;

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// One past the largest node id that can appear (dense arrays index by this).
    int node_capacity() const { return node_capacity_; }
    int edge_capacity() const { return edge_capacity_; }

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_node(NodeId v) const {
        return v >= 0 && v < node_capacity_ && present_[v] != 0;
    }
    bool has_edge(EdgeId e) const {
        return e >= 0 && e < edge_capacity_ && edge_slot_[e] >= 0;
    }

    const Edge& edge(EdgeId e) const;
    const std::vector<EdgeId>& incident(NodeId v) const;
    std::optional<EdgeId> edge_between(NodeId a, NodeId b) const;
    int degree(NodeId v) const { return static_cast<int>(incident(v).size()); }

    bool is_base() const { return base_; }

    /// Bit width of a node id, feeding the simulator's message accounting.
    int id_bits() const;

    bool connected() const;

  private:
    Graph() = default;
    void check_node(NodeId v) const;

    int node_capacity_ = 0;
    int edge_capacity_ = 0;
    bool base_ = false;
    std::vector<NodeId> nodes_;
    std::vector<char> present_;
    std::vector<Edge> edges_;
    std::vector<int> edge_slot_;
    std::vector<std::vector<EdgeId>> incident_;
};

/// Free-function form used by callers that mirror the operation vocabulary.
inline Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& keep) {
    return g.induced(keep);
}

/// A set of pairwise non-adjacent edges over a Graph, with per-node
/// matched-partner bookkeeping. Value-semantic snapshot.
class Matching {
  public:
    Matching() = default;
    static Matching empty(const Graph& g);
    static Matching from_edges(const Graph& g, const std::vector<EdgeId>& edge_ids);

    int size() const { return size_; }
    bool contains(EdgeId e) const {
        return e >= 0 && e < static_cast<int>(in_set_.size()) && in_set_[e] != 0;
    }
    bool is_matched(NodeId v) const {
        return v >= 0 && v < static_cast<int>(partner_.size()) && partner_[v] >= 0;
    }
    std::optional<NodeId> partner(NodeId v) const {
        if (!is_matched(v)) return std::nullopt;
        return partner_[v];
    }

    void add(const Graph& g, EdgeId e);
    void remove(const Graph& g, EdgeId e);

    /// Edges of the matching in ascending id order.
    std::vector<EdgeId> edges() const;

    /// The matching M restricted to E(h) for a subgraph h.
    Matching restricted_to(const Graph& h) const;

    /// Unmatched nodes of `g`, ascending.
    std::vector<NodeId> unmatched_nodes(const Graph& g) const;

    void validate(const Graph& g) const;

  private:
    std::vector<char> in_set_;
    std::vector<NodeId> partner_;
    int size_ = 0;
};

/// Alternating sequence of nodes and edges v0,e1,v1,...,e_l,v_l.
struct Walk {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;

    int length() const { return static_cast<int>(edges.size()); }
    NodeId front() const { return nodes.front(); }
    NodeId back() const { return nodes.back(); }

    static Walk from_nodes(const Graph& g, const std::vector<NodeId>& seq);

    /// Throws std::invalid_argument if the walk is not a walk of g.
    void validate_in(const Graph& g) const;

    bool is_path() const;
    /// Consecutive edges alternate matched/unmatched membership.
    bool is_alternating(const Matching& m) const;
    /// Alternating and length == theta (mod 2).
    bool is_theta_alternating(const Matching& m, int theta) const;

    Walk reversed() const;
};

/// For a source f, shortest theta-alternating path lengths r^theta(f,v).
///
/// Sentinel convention at the source: dist(f,0) = infinity, dist(f,1) = 0.
class AltDist {
  public:
    AltDist() = default;
    AltDist(NodeId source, int node_capacity);

    NodeId source() const { return source_; }
    int at(NodeId v, int theta) const { return d_[v][theta]; }
    bool finite(NodeId v, int theta) const { return d_[v][theta] < kInfDist; }

    /// gamma(v) = argmin_theta r^theta(f,v); zero when both are infinite.
    int gamma(NodeId v) const {
        if (d_[v][0] >= kInfDist && d_[v][1] >= kInfDist) return 0;
        return d_[v][0] <= d_[v][1] ? 0 : 1;
    }
    int min_dist(NodeId v) const { return std::min(d_[v][0], d_[v][1]); }

    void set(NodeId v, int theta, int value);
    void check_invariants(const Graph& g) const;

  private:
    NodeId source_ = -1;
    std::vector<std::array<int, 2>> d_;
};

/// True iff p is a simple alternating path whose endpoints are both unmatched.
bool is_augmenting(const Graph& g, const Matching& m, const Walk& p);

/// Flip matched/unmatched membership along an augmenting path.
Matching augment_along(const Graph& g, const Matching& m, const Walk& p);

}  // namespace cmatch
