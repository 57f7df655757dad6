#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace satgame {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Simple undirected graph on a fixed vertex set {0..n-1}, n <= 32.
/// Adjacency is kept as one bitmask row per vertex; the whole struct is a
/// cheap value type, so states can be copied freely during search.
class Graph {
public:
    static constexpr int max_vertices = 32;

    Graph() : n_(0) {}
    explicit Graph(int n) : n_(n) {
        if (n < 0 || n > max_vertices) throw GraphError("vertex count out of range");
    }

    int vertex_count() const { return n_; }
    int edge_count() const;

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return (adj_[u] >> v) & 1u;
    }

    /// Neighbor bitmask of v.
    std::uint32_t row(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const;
    int max_degree() const;

    void add_edge_in_place(int u, int v);

    bool operator==(const Graph&) const = default;

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw GraphError("vertex out of range");
    }

    int n_;
    std::array<std::uint32_t, max_vertices> adj_{};
};

/// Copy of g with edge {u,v} added. Throws on self-loops, out-of-range
/// vertices, and edges that already exist.
Graph add_edge(const Graph& g, int u, int v);

/// Connected components as sorted vertex lists, ordered by smallest vertex.
/// Isolated vertices are singleton components.
std::vector<std::vector<int>> components(const Graph& g);

/// Vertex bitmask of the component containing v.
std::uint32_t component_mask(const Graph& g, int v);

/// Number of vertices on a longest simple path: 0 for the empty graph,
/// 1 if there are vertices but no edges. Exact subset dynamic program per
/// component; components above 24 vertices are rejected.
int longest_path_vertices(const Graph& g);

/// Longest simple path (vertex count) within one component, given as a mask.
int longest_path_in_component(const Graph& g, std::uint32_t comp);

/// True iff the component of `comp` has a simple path on >= target vertices.
/// Same DP as longest_path_in_component but exits early.
bool component_has_path(const Graph& g, std::uint32_t comp, int target);

/// True iff g has no cycle (checked per component by edge count).
bool is_acyclic(const Graph& g);

using CanonicalKey = std::string;

/// Isomorphism-invariant key: equal keys <=> isomorphic graphs (with equal
/// vertex counts). Built from a multiset of per-component codes — direct
/// codes for paths and cycles, recursive center-based codes for trees, and a
/// color-pruned permutation search for anything else (that route is limited
/// to components on <= 16 vertices).
CanonicalKey canonical_key(const Graph& g);

/// Canonical code of a single component (mask form).
std::string component_code(const Graph& g, std::uint32_t comp);

/// Key for a graph with one distinguished edge: equal keys <=> there is an
/// isomorphism mapping mark to mark. Used to pool positions whose follow-up
/// depends on the opponent's last move.
CanonicalKey marked_canonical_key(const Graph& g, int mu, int mv);

/// Text fixture format: first line "n m", then m lines "u v", 0-based.
Graph parse_graph_text(const std::string& text);
std::string format_graph_text(const Graph& g);

}  // namespace satgame
