#include "antimagic/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "antimagic/errors.hpp"
#include "antimagic/labelling.hpp"

namespace antimagic {

CoreSplit r_core(const Graph& g, int r) {
    if (r < 1) fail_precondition("r_core: r must be >= 1");
    std::vector<int> degree(g.n);
    std::vector<uint8_t> removed(g.n, 0);
    std::queue<int> q;
    for (int v = 0; v < g.n; ++v) {
        degree[v] = g.degree(v);
        if (degree[v] <= r - 1) q.push(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (removed[v]) continue;
        removed[v] = 1;
        for (auto [w, id] : g.adj[v]) {
            (void)id;
            if (!removed[w] && --degree[w] == r - 1) q.push(w);
        }
    }
    CoreSplit out;
    out.r = r;
    out.core = VertexSet(g.n);
    out.shell = VertexSet(g.n);
    for (int v = 0; v < g.n; ++v) (removed[v] ? out.shell : out.core).add(v);

    for (int v : out.core.members()) {
        int inside = 0;
        for (auto [w, id] : g.adj[v]) {
            (void)id;
            if (out.core.contains(w)) ++inside;
        }
        require(inside >= r, "r_core: core vertex with internal degree < r");
    }
    int64_t shell_edges = 0;
    for (const Edge& e : g.edges)
        if (out.shell.contains(e.u) || out.shell.contains(e.v)) ++shell_edges;
    require(shell_edges <= static_cast<int64_t>(r - 1) * out.shell.size(),
            "r_core: |E(shell,V)| > (r-1)|shell|");
    return out;
}

namespace {

double log_binom(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// p + sum_{i<k} (k-i) C(delta,i) p^i (1-p)^(delta-i): expected size fraction
// of the randomized total-k-domination construction.
double dom_bound(int k, int delta, double p) {
    double total = p;
    for (int i = 0; i < k; ++i) {
        double t = log_binom(delta, i) + i * std::log(p) + (delta - i) * std::log1p(-p);
        total += (k - i) * std::exp(t);
    }
    return total;
}

struct GridMin {
    double value;
    double p;
};

GridMin minimise_dom_bound(int k, int delta) {
    double lo = 0.0, hi = 1.0;
    GridMin best{std::numeric_limits<double>::infinity(), 0.5};
    const int grid = 512;
    for (int round = 0; round < 3; ++round) {
        double step = (hi - lo) / (grid + 1);
        for (int j = 1; j <= grid; ++j) {
            double p = lo + j * step;
            if (p <= 0.0 || p >= 1.0) continue;
            double v = dom_bound(k, delta, p);
            if (v < best.value) best = GridMin{v, p};
        }
        lo = std::max(0.0, best.p - step);
        hi = std::min(1.0, best.p + step);
    }
    return best;
}

} // namespace

double z_bound(int k, int delta) {
    if (delta < k || k < 1) fail_precondition("z_bound: need delta >= k >= 1");
    return std::min(minimise_dom_bound(k, delta).value, 1.0);
}

double z_argmin(int k, int delta) {
    if (delta < k || k < 1) fail_precondition("z_argmin: need delta >= k >= 1");
    return minimise_dom_bound(k, delta).p;
}

VertexSet total_k_dominating_set(const Graph& g, int k, Rng rng, int trials) {
    int delta = g.min_degree();
    if (delta < k)
        fail_precondition("total_k_dominating_set: min degree " + std::to_string(delta) +
                          " below k = " + std::to_string(k));
    double p = z_argmin(k, delta);

    std::vector<int> best;
    for (int trial = 0; trial < trials; ++trial) {
        Rng local = rng.split(trial);
        std::vector<uint8_t> in_d(g.n, 0);
        for (int v = 0; v < g.n; ++v) in_d[v] = local.bernoulli(p) ? 1 : 0;
        // snapshot-based repair: vertices short of k neighbours in R pull in
        // more of their fixed neighbour set S_v
        std::vector<int> additions;
        for (int v = 0; v < g.n; ++v) {
            int have = 0;
            for (int j = 0; j < delta; ++j)
                if (in_d[g.adj[v][j].first]) ++have;
            for (int j = 0; j < delta && have < k; ++j) {
                int w = g.adj[v][j].first;
                if (!in_d[w]) {
                    additions.push_back(w);
                    ++have;
                }
            }
        }
        for (int w : additions) in_d[w] = 1;

        std::vector<int> d;
        for (int v = 0; v < g.n; ++v)
            if (in_d[v]) d.push_back(v);
        bool valid = true;
        for (int v = 0; v < g.n && valid; ++v) {
            int have = 0;
            for (auto [w, id] : g.adj[v]) {
                (void)id;
                if (in_d[w] && ++have >= k) break;
            }
            if (have < k) valid = false;
        }
        if (valid && (best.empty() || d.size() < best.size())) best = std::move(d);
    }
    require(!best.empty(), "total_k_dominating_set: no valid trial");

    VertexSet out = VertexSet::of(g.n, best);
    for (int v = 0; v < g.n; ++v) {
        int have = 0;
        for (auto [w, id] : g.adj[v]) {
            (void)id;
            if (out.contains(w)) ++have;
        }
        require(have >= k, "total_k_dominating_set: domination violated");
    }
    return out;
}

bool m_prime_eq_holds(double a, double a1, double a2) {
    double s = std::sqrt(a1) + std::sqrt(a2);
    for (double ai : {a1, a2}) {
        double p = std::sqrt(ai) / s;
        double rad = p * p + 2.0 * a * p * p * p - 2.0 * a * p * p * p * p;
        if (a * p * p - std::sqrt(rad) < ai) return false;
    }
    return true;
}

double m_prime(double a1, double a2) {
    if (a1 <= 0.0 || a2 <= 0.0) fail_precondition("m_prime: arguments must be positive");
    double lo = 0.0, hi = std::max({a1, a2, 1.0});
    while (!m_prime_eq_holds(hi, a1, a2)) hi *= 2.0;
    while ((hi - lo) / hi > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (m_prime_eq_holds(mid, a1, a2))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::pair<VertexSet, VertexSet> bipartition_edges(const Graph& g, int64_t r1, int64_t r2, Rng rng,
                                                  int max_trials) {
    double p1 = std::sqrt(static_cast<double>(r1)) /
                (std::sqrt(static_cast<double>(r1)) + std::sqrt(static_cast<double>(r2)));
    int64_t best1 = -1, best2 = -1;
    for (int trial = 0; trial < max_trials; ++trial) {
        Rng local = rng.split(trial);
        std::vector<uint8_t> side(g.n);
        for (int v = 0; v < g.n; ++v) side[v] = local.bernoulli(p1) ? 0 : 1;
        int64_t c1 = 0, c2 = 0;
        for (const Edge& e : g.edges) {
            if (side[e.u] == 0 && side[e.v] == 0) ++c1;
            if (side[e.u] == 1 && side[e.v] == 1) ++c2;
        }
        if (c1 >= r1 && c2 >= r2) {
            VertexSet u1(g.n), u2(g.n);
            for (int v = 0; v < g.n; ++v) (side[v] == 0 ? u1 : u2).add(v);
            return {std::move(u1), std::move(u2)};
        }
        if (std::min(c1 - r1, c2 - r2) > std::min(best1 - r1, best2 - r2)) {
            best1 = c1;
            best2 = c2;
        }
    }
    fail_construction("bipartition_edges: " + std::to_string(max_trials) +
                      " trials exhausted; best attempt had |E(U1)| = " + std::to_string(best1) +
                      " (needs " + std::to_string(r1) + "), |E(U2)| = " + std::to_string(best2) +
                      " (needs " + std::to_string(r2) + ")");
}

namespace {

// Successively removing edges between two vertices of degree > delta never
// re-enables an earlier edge, so one index-ordered pass reaches the fixpoint.
std::vector<uint8_t> strip_big_big_edges(const Graph& g, int delta) {
    std::vector<int> degree(g.n);
    for (int v = 0; v < g.n; ++v) degree[v] = g.degree(v);
    std::vector<uint8_t> alive(g.m(), 1);
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edges[id];
        if (degree[e.u] > delta && degree[e.v] > delta) {
            alive[id] = 0;
            --degree[e.u];
            --degree[e.v];
        }
    }
    return alive;
}

} // namespace

StarForestPlan build_star_forest(const Graph& g, int delta, int64_t r, Rng rng) {
    const int64_t n = g.n;
    if (delta < 5) fail_precondition("build_star_forest: delta must be >= 5");
    if (g.min_degree() < delta)
        fail_precondition("build_star_forest: min degree below delta = " + std::to_string(delta));
    if (2 * r > n * delta) fail_precondition("build_star_forest: r > n*delta/2");

    std::vector<uint8_t> alive = strip_big_big_edges(g, delta);
    std::vector<int> h_degree(g.n, 0);
    std::vector<Edge> h_edges;
    std::vector<int> h_orig;
    for (int id = 0; id < g.m(); ++id)
        if (alive[id]) {
            h_edges.push_back(g.edges[id]);
            h_orig.push_back(id);
            ++h_degree[g.edges[id].u];
            ++h_degree[g.edges[id].v];
        }
    Graph h(g.n, h_edges);
    require(h.min_degree() >= delta, "build_star_forest: stripping broke the degree floor");

    std::vector<uint8_t> small(g.n, 0); // V_s: degree exactly delta in H
    for (int v = 0; v < g.n; ++v) small[v] = h.degree(v) == delta ? 1 : 0;

    VertexSet dom = total_k_dominating_set(h, 5, rng.split(0x646f6d)); // "dom"
    double achieved_z = static_cast<double>(dom.size()) / n;

    std::vector<uint8_t> in_v(g.n, 1); // V(t)
    for (int v : dom.members())
        if (small[v]) in_v[v] = 0; // drop D_s
    int64_t live_edges = 0;
    for (const Edge& e : h.edges)
        if (in_v[e.u] && in_v[e.v]) ++live_edges;

    auto remove_vertex = [&](int v) {
        for (auto [w, id] : h.adj[v]) {
            (void)id;
            if (in_v[w]) --live_edges;
        }
        in_v[v] = 0;
    };

    StarForestPlan plan;
    std::vector<uint8_t> is_centre(g.n, 0);
    while (live_edges >= r + n + delta) {
        // prefer an edge from V_s(t) into V_b(t); its big endpoint is the centre
        int centre = -1;
        int fallback_centre = -1;
        for (int id = 0; id < h.m() && centre == -1; ++id) {
            const Edge& e = h.edges[id];
            if (!in_v[e.u] || !in_v[e.v]) continue;
            bool su = small[e.u], sv = small[e.v];
            if (su && !sv)
                centre = e.v;
            else if (!su && sv)
                centre = e.u;
            else if (su && sv && fallback_centre == -1)
                fallback_centre = std::min(e.u, e.v);
        }
        if (centre == -1) centre = fallback_centre;
        require(centre != -1, "build_star_forest: no edge available for a centre");

        std::vector<int> nbrs;
        for (auto [w, id] : h.adj[centre]) {
            (void)id;
            if (in_v[w]) nbrs.push_back(w);
        }
        std::sort(nbrs.begin(), nbrs.end());
        remove_vertex(centre);
        Star star;
        star.centre = centre;
        for (int w : nbrs) {
            // peek the edge loss of removing w; stop before dropping below r
            int64_t loss = 0;
            for (auto [x, id] : h.adj[w]) {
                (void)id;
                if (in_v[x]) ++loss;
            }
            if (live_edges - loss < r) break;
            remove_vertex(w);
            star.leaves.push_back(w);
        }
        require(!star.leaves.empty(), "build_star_forest: star with no leaves");
        require(live_edges >= r, "build_star_forest: loop invariant |E(V(t))| >= r broken");
        is_centre[centre] = 1;
        plan.stars.push_back(std::move(star));
    }

    // star edge ids come from G (H edges are G edges)
    for (size_t si = 0; si < plan.stars.size(); ++si) {
        Star& st = plan.stars[si];
        std::vector<uint8_t> want(g.n, 0);
        for (int leaf : st.leaves) want[leaf] = 1;
        for (auto [w, id] : h.adj[st.centre])
            if (want[w]) {
                st.edge_ids.push_back(h_orig[id]);
                want[w] = 0;
            }
        require(st.edge_ids.size() == st.leaves.size(), "build_star_forest: missing star edge");
    }

    plan.v0 = VertexSet(g.n);
    plan.v1 = VertexSet(g.n);
    plan.v2 = VertexSet(g.n);
    std::vector<uint8_t> in_fs(g.n, 0);
    for (const Star& st : plan.stars) {
        in_fs[st.centre] = 1;
        for (int leaf : st.leaves) in_fs[leaf] = 1;
        for (int id : st.edge_ids) plan.star_edges.push_back(id);
    }
    std::sort(plan.star_edges.begin(), plan.star_edges.end());
    for (int v = 0; v < g.n; ++v) {
        if (!in_fs[v])
            plan.v0.add(v);
        else if (!small[v])
            plan.v1.add(v);
        else
            plan.v2.add(v);
    }
    plan.achieved_z = achieved_z;
    for (int v : plan.v1.members())
        require(is_centre[v], "build_star_forest: V1 vertex is not a centre");

    // Condition 1
    int64_t v0_edges = induced_edges(g, plan.v0).size();
    require(v0_edges >= r, "build_star_forest: Condition 1 |E(V0)| >= r");
    // Condition 2, with the achieved dominating fraction
    double rhs = n * (0.5 - achieved_z - 2.0 / delta) - 1.0 - static_cast<double>(r) / delta;
    require(static_cast<double>(plan.star_edges.size()) >= rhs - 1e-9,
            "build_star_forest: Condition 2 star edge count");
    // Condition 3
    for (int v = 0; v < g.n; ++v) {
        int to_v0_v1 = 0, to_v0 = 0;
        for (auto [w, id] : g.adj[v]) {
            (void)id;
            if (plan.v0.contains(w)) {
                ++to_v0;
                ++to_v0_v1;
            } else if (plan.v1.contains(w)) {
                ++to_v0_v1;
            }
        }
        require(to_v0_v1 >= 5, "build_star_forest: Condition 3 (five edges to V0 or V1)");
        if (plan.v1.contains(v))
            require(to_v0 >= 5, "build_star_forest: Condition 3 (V1 needs five edges to V0)");
    }
    return plan;
}

PartitionPlan build_partition(const Graph& g, int delta, int64_t r, int64_t r1, int64_t r2,
                              Rng rng) {
    PartitionPlan plan;
    plan.stars = build_star_forest(g, delta, r, rng.split(0x73746172)); // "star"
    const VertexSet& v0 = plan.stars.v0;
    const VertexSet& v1 = plan.stars.v1;
    const VertexSet& v2 = plan.stars.v2;
    const int64_t n = g.n;

    // G1 = (V0 ∪ V1, E(V0) ∪ E(V0,V1)); two-colour it so colour 2 builds F'
    VertexSet v01(g.n);
    for (int v = 0; v < g.n; ++v)
        if (!v2.contains(v)) v01.add(v);
    std::vector<int> g1_edges;
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edges[id];
        bool u0 = v0.contains(e.u), v0b = v0.contains(e.v);
        bool u01 = v01.contains(e.u), v01b = v01.contains(e.v);
        if (u01 && v01b && (u0 || v0b)) g1_edges.push_back(id);
    }
    Subgraph g1 = make_subgraph(g, v01, g1_edges);
    std::vector<int> colour = equitable_two_colouring(g1.graph, 2);

    // F' = spanning forest of the colour-2 subgraph (BFS from lowest roots)
    std::vector<std::vector<std::pair<int, int>>> adj2(g1.graph.n);
    for (int i = 0; i < g1.graph.m(); ++i)
        if (colour[i] == 2) {
            adj2[g1.graph.edges[i].u].emplace_back(g1.graph.edges[i].v, i);
            adj2[g1.graph.edges[i].v].emplace_back(g1.graph.edges[i].u, i);
        }
    std::vector<uint8_t> seen(g1.graph.n, 0);
    std::vector<int> fprime; // parent edge ids
    for (int s = 0; s < g1.graph.n; ++s) {
        if (seen[s] || adj2[s].empty()) continue;
        seen[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [w, i] : adj2[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    fprime.push_back(g1.to_parent_edge[i]);
                    q.push(w);
                }
        }
    }

    plan.forest_edges = fprime;
    plan.forest_edges.insert(plan.forest_edges.end(), plan.stars.star_edges.begin(),
                             plan.stars.star_edges.end());
    std::sort(plan.forest_edges.begin(), plan.forest_edges.end());
    std::vector<uint8_t> in_f(g.m(), 0);
    for (int id : plan.forest_edges) in_f[id] = 1;

    // Condition 1: F_S ⊆ F ⊆ G and F is a spanning forest
    require(is_forest(g, plan.forest_edges), "build_partition: Condition 1 (F acyclic)");
    // Condition 2
    require(induced_edges(g, v0).size() >= r, "build_partition: Condition 2 |E(V0)| >= r");
    // Condition 3
    double c3 = n * (0.5 - plan.stars.achieved_z - 2.0 / delta) - 1.0 -
                static_cast<double>(r) / delta;
    require(static_cast<double>(plan.stars.star_edges.size()) >= c3 - 1e-9,
            "build_partition: Condition 3 star edge count");
    // Condition 4: F-components not inside V(F_S) have >= 3 vertices
    {
        std::vector<int> comp(g.n, -1);
        std::vector<std::vector<std::pair<int, int>>> fadj(g.n);
        for (int id : plan.forest_edges) {
            fadj[g.edges[id].u].emplace_back(g.edges[id].v, id);
            fadj[g.edges[id].v].emplace_back(g.edges[id].u, id);
        }
        for (int s = 0; s < g.n; ++s) {
            if (comp[s] != -1) continue;
            std::vector<int> verts;
            std::vector<int> stack{s};
            comp[s] = s;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                verts.push_back(v);
                for (auto [w, id] : fadj[v]) {
                    (void)id;
                    if (comp[w] == -1) {
                        comp[w] = s;
                        stack.push_back(w);
                    }
                }
            }
            bool inside_fs = true;
            for (int v : verts)
                if (v0.contains(v)) inside_fs = false;
            if (!inside_fs && verts.size() > 1)
                require(verts.size() >= 3, "build_partition: Condition 4 (component of size 2)");
            if (!inside_fs && verts.size() == 1)
                require(fadj[verts[0]].empty() && v0.contains(verts[0]),
                        "build_partition: Condition 4 (stranded singleton)");
        }
    }
    // Condition 5: V2 vertices carry only star edges inside F
    for (int v : v2.members())
        for (auto [w, id] : g.adj[v]) {
            (void)w;
            if (in_f[id])
                require(std::binary_search(plan.stars.star_edges.begin(),
                                           plan.stars.star_edges.end(), id),
                        "build_partition: Condition 5 (non-star F edge at V2)");
        }
    // Conditions 6 and 7
    for (int v = 0; v < g.n; ++v) {
        if (v1.contains(v)) {
            int cnt = 0;
            for (auto [w, id] : g.adj[v])
                if (!in_f[id] && v0.contains(w)) ++cnt;
            require(cnt >= 2, "build_partition: Condition 7 (V1 vertex lacks 2 non-F edges to V0)");
        } else {
            int cnt = 0;
            for (auto [w, id] : g.adj[v])
                if (!in_f[id] && (v0.contains(w) || v1.contains(w))) ++cnt;
            require(cnt >= 2,
                    "build_partition: Condition 6 (vertex lacks 2 non-F edges to V0 ∪ V1)");
        }
    }

    // Condition 8: bipartition of V0 over G' = (V0, E(V0) \ F)
    std::vector<int> gp_edges;
    for (int id = 0; id < g.m(); ++id)
        if (!in_f[id] && v0.contains(g.edges[id].u) && v0.contains(g.edges[id].v))
            gp_edges.push_back(id);
    Subgraph gp = make_subgraph(g, v0, gp_edges);
    auto [u1s, u2s] = bipartition_edges(gp.graph, r1, r2, rng.split(0x62697061)); // "bipa"
    plan.u1 = VertexSet(g.n);
    plan.u2 = VertexSet(g.n);
    for (int v : u1s.members()) plan.u1.add(gp.to_parent_vertex[v]);
    for (int v : u2s.members()) plan.u2.add(gp.to_parent_vertex[v]);
    {
        int64_t c1 = 0, c2 = 0;
        for (int id : gp_edges) {
            const Edge& e = g.edges[id];
            if (plan.u1.contains(e.u) && plan.u1.contains(e.v)) ++c1;
            if (plan.u2.contains(e.u) && plan.u2.contains(e.v)) ++c2;
        }
        require(c1 >= r1 && c2 >= r2, "build_partition: Condition 8 edge counts");
    }

    // U3 and the five edge classes consumed by the labelling stages
    plan.u3 = VertexSet(g.n);
    for (int v : v0.members()) {
        bool all_in_f = true;
        for (auto [w, id] : g.adj[v])
            if (v0.contains(w) && !in_f[id]) all_in_f = false;
        if (all_in_f) plan.u3.add(v);
    }
    plan.class_of.assign(g.m(), 0);
    std::vector<uint8_t> in_fs_edges(g.m(), 0);
    for (int id : plan.stars.star_edges) in_fs_edges[id] = 1;
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edges[id];
        int cls;
        if (in_f[id])
            cls = in_fs_edges[id] ? 5 : 4;
        else if (v2.contains(e.u) || v2.contains(e.v))
            cls = 1;
        else if (v1.contains(e.u) || v1.contains(e.v))
            cls = 2;
        else
            cls = 3;
        plan.class_of[id] = static_cast<int8_t>(cls);
        plan.edge_class[cls - 1].push_back(id);
    }
    int64_t total = 0;
    for (const auto& cls : plan.edge_class) total += cls.size();
    require(total == g.m(), "build_partition: edge classes do not partition E");
    return plan;
}

} // namespace antimagic
