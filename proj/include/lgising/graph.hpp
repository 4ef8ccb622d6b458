#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lgising {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected simple graph.  Vertices are 0..n-1, edges carry stable indices,
// and every edge is split into two half-edges for the Markov chains:
// half-edge 2e is the copy at edges[e].first, 2e+1 the copy at edges[e].second.
class Graph {
  public:
    Graph() = default;

    // Validates simplicity: rejects self-loops, duplicate edges and
    // out-of-range endpoints.  Endpoints are stored sorted.
    static Graph from_edges(int vertex_count, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int half_edge_count() const { return 2 * edge_count(); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::pair<int, int> edge(int e) const { return edges_[e]; }

    // Edge indices incident at vertex k.
    const std::vector<int>& incident(int k) const { return incident_[k]; }
    int degree(int k) const { return static_cast<int>(incident_[k].size()); }
    int max_degree() const;

    static int half_edge(int e, int side) { return 2 * e + side; }
    static int edge_of(int h) { return h >> 1; }
    static int side_of(int h) { return h & 1; }
    int owner(int h) const {
        auto [u, v] = edges_[h >> 1];
        return (h & 1) ? v : u;
    }

    bool has_edge(int u, int v) const;

    // Number of edges in the line graph, sum_k C(d(k),2).
    long line_graph_edge_count() const;

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> incident_;
};

// Vertices of the result are the edge indices of g; {e,f} is an edge whenever
// e != f share an endpoint.
Graph line_graph(const Graph& g);

// 3-regular hexagonal (honeycomb) lattice on an LxL torus, 2L^2 vertices and
// 3L^2 edges; its line graph is the kagome lattice patch with periodic
// boundary.  L = 1 would create parallel edges and is rejected.
Graph hex_torus(int L);

// Test fixtures: path_k / cycle_k / star_d / complete_k.
Graph path_graph(int k);
Graph cycle_graph(int k);
Graph star_graph(int d);
Graph complete_graph(int k);
Graph named_graph(const std::string& name, int param);

// Edge-list text format: optional header "p <n> <m>", lines "u v" with
// 0-based vertex ids, '#' starts a comment.  serialize emits the canonical
// form (header, endpoints sorted within an edge, edges sorted).
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);

}  // namespace lgising
