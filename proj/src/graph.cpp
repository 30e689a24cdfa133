#include "antimagic/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "antimagic/errors.hpp"

namespace antimagic {

IndexSet IndexSet::of(int universe, std::vector<int> members) {
    IndexSet s(universe);
    for (int i : members) s.add(i);
    return s;
}

IndexSet IndexSet::full(int universe) {
    IndexSet s(universe);
    for (int i = 0; i < universe; ++i) s.add(i);
    return s;
}

void IndexSet::add(int i) {
    if (i < 0 || i >= universe_) fail_input("IndexSet: index " + std::to_string(i) + " out of range");
    if (mask_[i]) fail_input("IndexSet: duplicate index " + std::to_string(i));
    mask_[i] = 1;
    if (!members_.empty() && members_.back() > i) sorted_ = false;
    members_.push_back(i);
}

const std::vector<int>& IndexSet::members() const {
    if (!sorted_) {
        std::sort(members_.begin(), members_.end());
        sorted_ = true;
    }
    return members_;
}

IndexSet IndexSet::complement() const {
    IndexSet s(universe_);
    for (int i = 0; i < universe_; ++i)
        if (!mask_[i]) s.add(i);
    return s;
}

namespace {

std::vector<std::vector<std::pair<int, int>>> build_adjacency(int n, const std::vector<Edge>& edges,
                                                              bool allow_duplicates) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    std::unordered_set<int64_t> seen;
    if (!allow_duplicates) seen.reserve(edges.size() * 2);
    for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
        const Edge& e = edges[id];
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            fail_input("edge " + std::to_string(id) + " endpoint out of range");
        if (e.u == e.v) fail_input("edge " + std::to_string(id) + " is a self-loop");
        if (!allow_duplicates) {
            int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
            int64_t key = static_cast<int64_t>(a) * n + b;
            if (!seen.insert(key).second)
                fail_input("duplicate edge " + std::to_string(a) + " " + std::to_string(b));
        }
        adj[e.u].emplace_back(e.v, id);
        adj[e.v].emplace_back(e.u, id);
    }
    return adj;
}

} // namespace

Graph::Graph(int n_, std::vector<Edge> edge_list) : n(n_), edges(std::move(edge_list)) {
    if (n < 0) fail_input("negative vertex count");
    adj = build_adjacency(n, edges, false);
}

int Graph::min_degree() const {
    int d = n == 0 ? 0 : m() * 2;
    for (int v = 0; v < n; ++v) d = std::min(d, degree(v));
    return d;
}

MultiGraph::MultiGraph(int n_, std::vector<Edge> edge_list) : n(n_), edges(std::move(edge_list)) {
    if (n < 0) fail_input("negative vertex count");
    adj = build_adjacency(n, edges, true);
}

EdgeSet induced_edges(const Graph& g, const VertexSet& a) {
    EdgeSet out(g.m());
    for (int id = 0; id < g.m(); ++id)
        if (a.contains(g.edges[id].u) && a.contains(g.edges[id].v)) out.add(id);
    return out;
}

EdgeSet cross_edges(const Graph& g, const VertexSet& a, const VertexSet& b) {
    EdgeSet out(g.m());
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edges[id];
        if ((a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u))) out.add(id);
    }
    return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    std::vector<int> label(g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        if (label[s] != -1) continue;
        int c = static_cast<int>(comps.size());
        VertexSet comp(g.n);
        std::queue<int> q;
        q.push(s);
        label[s] = c;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.add(v);
            for (auto [w, id] : g.adj[v]) {
                (void)id;
                if (label[w] == -1) {
                    label[w] = c;
                    q.push(w);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

} // namespace

Forest spanning_forest(const Graph& g, const std::vector<int>& required_edges) {
    Dsu dsu(g.n);
    std::vector<int> chosen;
    for (int id : required_edges) {
        if (id < 0 || id >= g.m()) fail_input("spanning_forest: edge id out of range");
        if (!dsu.unite(g.edges[id].u, g.edges[id].v))
            fail_precondition("spanning_forest: required edges contain a cycle");
        chosen.push_back(id);
    }
    for (int id = 0; id < g.m(); ++id)
        if (dsu.unite(g.edges[id].u, g.edges[id].v)) chosen.push_back(id);
    std::sort(chosen.begin(), chosen.end());
    return Forest{std::move(chosen)};
}

bool is_forest(const Graph& g, const std::vector<int>& edge_ids) {
    Dsu dsu(g.n);
    for (int id : edge_ids)
        if (!dsu.unite(g.edges[id].u, g.edges[id].v)) return false;
    return true;
}

std::vector<Star> star_decomposition(const Graph& g, const std::vector<int>& edge_ids,
                                     const std::vector<int>& centres) {
    std::vector<int8_t> is_centre(g.n, 0);
    for (int c : centres) is_centre[c] = 1;
    std::vector<Star> stars(centres.size());
    std::vector<int> star_of(g.n, -1);
    for (size_t i = 0; i < centres.size(); ++i) {
        stars[i].centre = centres[i];
        star_of[centres[i]] = static_cast<int>(i);
    }
    for (int id : edge_ids) {
        const Edge& e = g.edges[id];
        int c, leaf;
        if (is_centre[e.u] && !is_centre[e.v]) {
            c = e.u;
            leaf = e.v;
        } else if (is_centre[e.v] && !is_centre[e.u]) {
            c = e.v;
            leaf = e.u;
        } else {
            fail_precondition("star_decomposition: edge not incident to exactly one centre");
        }
        if (star_of[leaf] != -1) fail_precondition("star_decomposition: stars not vertex-disjoint");
        star_of[leaf] = star_of[c];
        Star& s = stars[star_of[c]];
        s.leaves.push_back(leaf);
        s.edge_ids.push_back(id);
    }
    for (const Star& s : stars)
        if (s.edge_ids.empty()) fail_precondition("star_decomposition: star with no edges");
    return stars;
}

std::vector<int> eulerian_circuit(const MultiGraph& g, std::optional<int> start_edge) {
    if (g.m() == 0) return {};
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) % 2 != 0)
            fail_precondition("eulerian_circuit: vertex " + std::to_string(v) + " has odd degree");

    int start_vertex;
    if (start_edge) {
        if (*start_edge < 0 || *start_edge >= g.m()) fail_input("eulerian_circuit: bad start edge");
        start_vertex = g.edges[*start_edge].u;
    } else {
        start_vertex = g.edges[0].u;
    }

    std::vector<uint8_t> used(g.m(), 0);
    std::vector<size_t> cursor(g.n, 0);
    std::vector<int> circuit;
    circuit.reserve(g.m());
    // Hierholzer: stack of (vertex, edge used to enter it).
    std::vector<std::pair<int, int>> stack;
    stack.emplace_back(start_vertex, -1);
    while (!stack.empty()) {
        auto [v, in_edge] = stack.back();
        bool advanced = false;
        while (cursor[v] < g.adj[v].size()) {
            auto [w, id] = g.adj[v][cursor[v]];
            if (used[id]) {
                ++cursor[v];
                continue;
            }
            used[id] = 1;
            stack.emplace_back(w, id);
            advanced = true;
            break;
        }
        if (!advanced) {
            if (in_edge >= 0) circuit.push_back(in_edge);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (static_cast<int>(circuit.size()) != g.m())
        fail_precondition("eulerian_circuit: edge set is disconnected");

    if (start_edge && circuit[0] != *start_edge) {
        // The circuit is closed, so any rotation is valid.
        auto it = std::find(circuit.begin(), circuit.end(), *start_edge);
        std::rotate(circuit.begin(), it, circuit.end());
    }
    return circuit;
}

Subgraph make_subgraph(const Graph& parent, const VertexSet& vertices,
                       const std::vector<int>& edge_ids) {
    Subgraph sg;
    sg.from_parent_vertex.assign(parent.n, -1);
    sg.to_parent_vertex = vertices.members();
    for (int i = 0; i < static_cast<int>(sg.to_parent_vertex.size()); ++i)
        sg.from_parent_vertex[sg.to_parent_vertex[i]] = i;
    std::vector<Edge> edges;
    edges.reserve(edge_ids.size());
    for (int id : edge_ids) {
        const Edge& e = parent.edges[id];
        int u = sg.from_parent_vertex[e.u];
        int v = sg.from_parent_vertex[e.v];
        if (u == -1 || v == -1) fail_input("make_subgraph: edge endpoint outside vertex set");
        edges.push_back(Edge{u, v});
        sg.to_parent_edge.push_back(id);
    }
    sg.graph = Graph(static_cast<int>(sg.to_parent_vertex.size()), std::move(edges));
    return sg;
}

} // namespace antimagic
