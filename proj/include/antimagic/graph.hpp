#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace antimagic {

struct Edge {
    int u = -1;
    int v = -1;

    int other(int w) const { return w == u ? v : u; }
    bool touches(int w) const { return u == w || v == w; }
};

// Sorted index set over a fixed universe [0, universe). Used both for vertex
// sets and edge-id sets.
class IndexSet {
  public:
    IndexSet() = default;
    explicit IndexSet(int universe) : universe_(universe), mask_(universe, 0) {}

    static IndexSet of(int universe, std::vector<int> members);
    static IndexSet full(int universe);

    void add(int i);
    bool contains(int i) const { return i >= 0 && i < universe_ && mask_[i] != 0; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    int universe() const { return universe_; }
    const std::vector<int>& members() const;
    IndexSet complement() const;

  private:
    int universe_ = 0;
    std::vector<uint8_t> mask_;
    mutable std::vector<int> members_;
    mutable bool sorted_ = true;
};

using VertexSet = IndexSet;
using EdgeSet = IndexSet;

// Simple undirected graph: dense integer vertices, edge list with stable
// integer edge ids, derived adjacency. Immutable after construction.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj; // adj[v] = {(neighbour, edge id)}

    Graph() = default;
    Graph(int n, std::vector<Edge> edge_list);

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int min_degree() const;
    double average_degree() const { return n == 0 ? 0.0 : 2.0 * m() / n; }
};

// As Graph, but duplicate edges are permitted; each edge keeps its identity.
struct MultiGraph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;

    MultiGraph() = default;
    MultiGraph(int n, std::vector<Edge> edge_list);

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

// An acyclic edge subset of a parent graph.
struct Forest {
    std::vector<int> edge_ids; // sorted ascending
};

// One star of a star forest: all edges meet in the centre.
struct Star {
    int centre = -1;
    std::vector<int> leaves;
    std::vector<int> edge_ids;
};

// E_G(A): edges with both endpoints in A.
EdgeSet induced_edges(const Graph& g, const VertexSet& a);
// E_G(A,B): edges writable as ab with a in A, b in B (A, B need not be disjoint).
EdgeSet cross_edges(const Graph& g, const VertexSet& a, const VertexSet& b);

std::vector<VertexSet> connected_components(const Graph& g);

// Spanning forest containing required_edges; throws if they contain a cycle.
Forest spanning_forest(const Graph& g, const std::vector<int>& required_edges);

bool is_forest(const Graph& g, const std::vector<int>& edge_ids);

// Splits an edge set into stars; throws if some component is not a star.
std::vector<Star> star_decomposition(const Graph& g, const std::vector<int>& edge_ids,
                                     const std::vector<int>& centres);

// Closed walk over every edge exactly once, as a sequence of edge ids.
// Requires all degrees even and the edge set connected (isolated vertices are
// ignored). If start_edge is given the circuit begins with that edge.
std::vector<int> eulerian_circuit(const MultiGraph& g, std::optional<int> start_edge = std::nullopt);

// A vertex-induced, edge-restricted copy with compact vertex numbering.
struct Subgraph {
    Graph graph;
    std::vector<int> to_parent_vertex;   // subgraph vertex -> parent vertex
    std::vector<int> to_parent_edge;     // subgraph edge id -> parent edge id
    std::vector<int> from_parent_vertex; // parent vertex -> subgraph vertex or -1
};

Subgraph make_subgraph(const Graph& parent, const VertexSet& vertices,
                       const std::vector<int>& edge_ids);

} // namespace antimagic
