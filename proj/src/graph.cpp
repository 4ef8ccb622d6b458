#include "lgising/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lgising {

Graph Graph::from_edges(int vertex_count, std::vector<std::pair<int, int>> edges) {
    if (vertex_count < 0) throw GraphError("negative vertex count");
    Graph g;
    g.n_ = vertex_count;
    g.incident_.assign(vertex_count, {});
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw GraphError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        int e = static_cast<int>(g.edges_.size());
        g.edges_.emplace_back(u, v);
        g.incident_[u].push_back(e);
        g.incident_[v].push_back(e);
    }
    return g;
}

int Graph::max_degree() const {
    int d = 0;
    for (int k = 0; k < n_; ++k) d = std::max(d, degree(k));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (int e : incident_[u]) {
        if (edges_[e] == std::make_pair(u, v)) return true;
    }
    return false;
}

long Graph::line_graph_edge_count() const {
    long total = 0;
    for (int k = 0; k < n_; ++k) {
        long d = degree(k);
        total += d * (d - 1) / 2;
    }
    return total;
}

Graph line_graph(const Graph& g) {
    std::vector<std::pair<int, int>> le;
    le.reserve(g.line_graph_edge_count());
    // Each adjacent edge pair shares exactly one vertex in a simple graph,
    // so enumerating pairs per vertex never produces duplicates.
    for (int k = 0; k < g.vertex_count(); ++k) {
        const auto& inc = g.incident(k);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j)
                le.emplace_back(inc[i], inc[j]);
    }
    return Graph::from_edges(g.edge_count(), std::move(le));
}

Graph hex_torus(int L) {
    if (L < 2)
        throw GraphError("hex_torus requires L >= 2; L=1 identifies the three edges "
                         "of a cell into parallel edges");
    // Brick-wall coordinates: two vertices per unit cell, A = 2*(x+L*y),
    // B = A+1, with the three bond orientations below.
    auto A = [L](int x, int y) { return 2 * ((x % L + L) % L + L * ((y % L + L) % L)); };
    auto B = [&](int x, int y) { return A(x, y) + 1; };
    std::vector<std::pair<int, int>> edges;
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) {
            edges.emplace_back(A(x, y), B(x, y));
            edges.emplace_back(A(x, y), B(x - 1, y));
            edges.emplace_back(A(x, y), B(x, y - 1));
        }
    return Graph::from_edges(2 * L * L, std::move(edges));
}

Graph path_graph(int k) {
    if (k < 1) throw GraphError("path_k requires k >= 1 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(k, std::move(e));
}

Graph cycle_graph(int k) {
    if (k < 3) throw GraphError("cycle_k requires k >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    return Graph::from_edges(k, std::move(e));
}

Graph star_graph(int d) {
    if (d < 1) throw GraphError("star_d requires d >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= d; ++i) e.emplace_back(0, i);
    return Graph::from_edges(d + 1, std::move(e));
}

Graph complete_graph(int k) {
    if (k < 1) throw GraphError("complete_k requires k >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
    return Graph::from_edges(k, std::move(e));
}

Graph named_graph(const std::string& name, int param) {
    if (name == "path") return path_graph(param);
    if (name == "cycle") return cycle_graph(param);
    if (name == "star") return star_graph(param);
    if (name == "complete") return complete_graph(param);
    if (name == "hex") return hex_torus(param);
    throw GraphError("unknown graph name: " + name);
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    int max_vertex = -1;
    auto to_vertex = [](const std::string& tok) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw GraphError("bad token in edge list: " + tok);
        return std::stol(tok);
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "p") {
            if (have_header || !edges.empty()) throw GraphError("misplaced header line");
            if (!(ls >> n >> m) || n < 0 || m < 0) throw GraphError("bad header line");
            have_header = true;
            continue;
        }
        long u = to_vertex(tok);
        std::string tok2;
        if (!(ls >> tok2)) throw GraphError("edge line needs two endpoints: " + line);
        long v = to_vertex(tok2);
        std::string extra;
        if (ls >> extra) throw GraphError("trailing tokens on edge line: " + line);
        if (have_header && (u >= n || v >= n)) throw GraphError("vertex id >= n from header");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_vertex = std::max({max_vertex, static_cast<int>(u), static_cast<int>(v)});
    }
    if (have_header && static_cast<long>(edges.size()) != m)
        throw GraphError("edge count disagrees with header");
    int vertex_count = have_header ? static_cast<int>(n) : max_vertex + 1;
    return Graph::from_edges(vertex_count, std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    std::ostringstream out;
    out << "p " << g.vertex_count() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
}

}  // namespace lgising
