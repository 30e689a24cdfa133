#pragma once

// Shared helpers for the test suites: independent recomputation oracles and
// random instance generators that satisfy the operations' preconditions.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "antimagic/graph.hpp"
#include "antimagic/io.hpp"
#include "antimagic/labelling.hpp"
#include "antimagic/rng.hpp"

namespace antimagic::test {

// recompute s(v) from scratch, independent of PartialLabelling's cache
inline std::vector<int64_t> naive_sums(const Graph& g, const PartialLabelling& lab) {
    std::vector<int64_t> sums(g.n);
    for (int v = 0; v < g.n; ++v) {
        int64_t s = lab.base(v);
        for (auto [w, id] : g.adj[v]) {
            (void)w;
            if (lab.has(id)) s += lab.label(id);
        }
        sums[v] = s;
    }
    return sums;
}

inline std::vector<int64_t> naive_histogram(const Graph& g, const PartialLabelling& lab,
                                            const VertexSet& s, int64_t k) {
    std::vector<int64_t> counts(k, 0);
    std::vector<int64_t> sums = naive_sums(g, lab);
    for (int v : s.members()) ++counts[((sums[v] % k) + k) % k];
    return counts;
}

inline bool sums_match_cache(const Graph& g, const PartialLabelling& lab) {
    std::vector<int64_t> slow = naive_sums(g, lab);
    for (int v = 0; v < g.n; ++v)
        if (slow[v] != lab.sum(v)) return false;
    return true;
}

inline std::vector<int64_t> random_potentials(int n, int64_t hi, Rng& rng) {
    std::vector<int64_t> g(n);
    for (int v = 0; v < n; ++v) g[v] = rng.range(0, hi);
    return g;
}

// random graph without isolated vertices (repairs by pairing strays)
inline Graph gnp_no_isolated(int n, double p, Rng& rng) {
    Graph base = generate("gnp(" + std::to_string(n) + "," + std::to_string(p) + ")", rng.next());
    std::vector<Edge> edges = base.edges;
    std::vector<int> degree(n, 0);
    for (const Edge& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    for (int v = 0; v < n; ++v)
        if (degree[v] == 0) {
            int w = static_cast<int>(rng.below(n));
            while (w == v) w = static_cast<int>(rng.below(n));
            bool dup = false;
            for (const Edge& e : edges)
                if ((e.u == v && e.v == w) || (e.u == w && e.v == v)) dup = true;
            if (!dup) {
                edges.push_back(Edge{std::min(v, w), std::max(v, w)});
                ++degree[v];
                ++degree[w];
            } else {
                --v; // retry this vertex
            }
        }
    return Graph(n, edges);
}

// matching of k disjoint edges on 2k vertices, randomly permuted vertex names
inline Graph random_matching(int k, Rng& rng) {
    int n = 2 * k;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<Edge> edges;
    for (int i = 0; i < k; ++i)
        edges.push_back(Edge{std::min(perm[2 * i], perm[2 * i + 1]),
                             std::max(perm[2 * i], perm[2 * i + 1])});
    return Graph(n, edges);
}

// dense instance meeting the two-moduli labelling preconditions for
// (k1,k2) = (5,7):
// V1 a near-clique with >= (k1k2+1)n internal edges, V2 likewise for (k1+1)n,
// and L = [1,|E|] (interval, so the per-class label counts hold).
struct TwoModuliInstance {
    Graph g;
    VertexSet v1, v2;
    std::vector<int64_t> labels;
    std::vector<int64_t> base;
};

inline TwoModuliInstance two_moduli_instance(Rng& rng, int64_t k1 = 5, int64_t k2 = 7) {
    // sizes chosen so near-complete halves satisfy the edge floors
    int n1 = 135, n2 = 75;
    int n = n1 + n2;
    std::vector<Edge> edges;
    auto keep = [&](double p) { return rng.unit() < p; };
    for (int u = 0; u < n1; ++u)
        for (int v = u + 1; v < n1; ++v)
            if (keep(0.95)) edges.push_back(Edge{u, v});
    for (int u = n1; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (keep(0.95)) edges.push_back(Edge{u, v});
    for (int u = 0; u < n1; ++u)
        for (int v = n1; v < n; ++v)
            if (keep(0.05)) edges.push_back(Edge{u, v});
    TwoModuliInstance inst{Graph(n, edges), VertexSet(n), VertexSet(n), {}, {}};
    for (int v = 0; v < n; ++v) (v < n1 ? inst.v1 : inst.v2).add(v);
    // isolated vertices are excluded by precondition; the densities make them
    // vanishingly unlikely, but repair deterministically if one appears
    for (int v = 0; v < n; ++v)
        if (inst.g.degree(v) == 0) {
            edges.push_back(Edge{std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
            inst.g = Graph(n, edges);
        }
    int64_t m = inst.g.m();
    int64_t need1 = (k1 * k2 + 1) * n, need2 = (k1 + 1) * n;
    if (induced_edges(inst.g, inst.v1).size() < need1 ||
        induced_edges(inst.g, inst.v2).size() < need2)
        return two_moduli_instance(rng, k1, k2); // densities make this rare
    inst.labels.resize(m);
    for (int64_t i = 0; i < m; ++i) inst.labels[i] = i + 1;
    inst.base = random_potentials(n, 1000, rng);
    return inst;
}

// instance for the target-sum AB labelling: bipartite-ish, A small, B large
struct ABInstance {
    Graph g;
    VertexSet a, b, bp;
    std::vector<int64_t> targets;
    std::vector<int64_t> labels;
    std::vector<int64_t> base;
};

inline ABInstance ab_instance(Rng& rng, int na, int nb, int nbp, int64_t k1, int64_t k2) {
    int n = na + nb;
    std::vector<Edge> edges;
    // each A vertex gets >= 2 random B neighbours, each B' vertex >= 1 A edge
    std::vector<std::vector<uint8_t>> have(na, std::vector<uint8_t>(nb, 0));
    for (int a = 0; a < na; ++a) {
        int quota = 2 + static_cast<int>(rng.below(4));
        int got = 0;
        while (got < quota) {
            int b = static_cast<int>(rng.below(nb));
            if (!have[a][b]) {
                have[a][b] = 1;
                ++got;
            }
        }
    }
    for (int b = 0; b < nbp; ++b) {
        bool covered = false;
        for (int a = 0; a < na; ++a) covered |= have[a][b] != 0;
        if (!covered && na > 0) have[rng.below(na)][b] = 1;
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            if (have[a][b]) edges.push_back(Edge{a, na + b});
    // sprinkle edges inside B and inside A
    for (int u = na; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.unit() < 0.05) edges.push_back(Edge{u, v});
    for (int u = 0; u + 1 < na; ++u)
        if (rng.unit() < 0.2) edges.push_back(Edge{u, u + 1});

    ABInstance inst{Graph(n, edges), VertexSet(n), VertexSet(n), VertexSet(n), {}, {}, {}};
    for (int v = 0; v < n; ++v) (v < na ? inst.a : inst.b).add(v);
    for (int b = 0; b < nbp; ++b) inst.bp.add(na + b);
    inst.targets.assign(n, 0);
    for (int v = 0; v < na; ++v) inst.targets[v] = rng.range(0, k1 * k2 - 1);
    int64_t m = inst.g.m();
    int64_t quota = k1 * k2 * (2 * na + nbp);
    inst.labels.resize(m + quota);
    for (size_t i = 0; i < inst.labels.size(); ++i) inst.labels[i] = static_cast<int64_t>(i) + 1;
    inst.base = random_potentials(n, 500, rng);
    return inst;
}

} // namespace antimagic::test
