#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "antimagic/errors.hpp"
#include "antimagic/graph.hpp"
#include "antimagic/io.hpp"
#include "antimagic/labelling.hpp"
#include "antimagic/partition.hpp"
#include "antimagic/rng.hpp"
#include "support.hpp"

using namespace antimagic;
using namespace antimagic::test;

TEST_CASE("partial labelling keeps sums exact") {
    Graph g = generate("gnp(15,0.4)", 11);
    Rng rng(2);
    PartialLabelling lab(g, random_potentials(g.n, 50, rng));
    for (int id = 0; id < g.m(); ++id) {
        if (rng.bernoulli(0.7)) lab.set(id, rng.range(0, 100));
        if (rng.bernoulli(0.2) && lab.has(id)) lab.set(id, rng.range(0, 100)); // overwrite
    }
    CHECK(sums_match_cache(g, lab));
    for (int v = 0; v < g.n; ++v) CHECK(lab.sum(v) == lab.slow_sum(v));
}

TEST_CASE("residue histogram basics") {
    Graph p3(3, {{0, 1}, {1, 2}});
    PartialLabelling empty(p3);
    ResidueHistogram h0 = residue_histogram(empty, VertexSet::full(3), 4);
    CHECK(h0.counts == std::vector<int64_t>{3, 0, 0, 0});

    PartialLabelling lab(p3);
    lab.set(0, 1);
    lab.set(1, 2);
    // sums: 1, 3, 2
    ResidueHistogram h = residue_histogram(lab, VertexSet::full(3), 3);
    CHECK(h.counts == std::vector<int64_t>{1, 1, 1});
    CHECK(h.total() == 3);
}

TEST_CASE("equitable two-colouring on K4 and K6") {
    Graph k4 = generate("complete(4)", 0);
    std::vector<int> c = equitable_two_colouring(k4, 1);
    std::vector<int> c1(4, 0), c2(4, 0);
    for (int id = 0; id < k4.m(); ++id) {
        (c[id] == 1 ? c1 : c2)[k4.edges[id].u]++;
        (c[id] == 1 ? c1 : c2)[k4.edges[id].v]++;
    }
    for (int v = 0; v < 4; ++v) {
        CHECK(c1[v] >= 1);
        CHECK(c2[v] >= 1);
    }

    Graph k6 = generate("complete(6)", 0);
    std::vector<int> c6 = equitable_two_colouring(k6, 2);
    std::vector<int> d1(6, 0), d2(6, 0);
    for (int id = 0; id < k6.m(); ++id) {
        (c6[id] == 1 ? d1 : d2)[k6.edges[id].u]++;
        (c6[id] == 1 ? d1 : d2)[k6.edges[id].v]++;
    }
    for (int v = 0; v < 6; ++v) {
        CHECK(d1[v] >= 2);
        CHECK(d2[v] >= 2);
    }
}

TEST_CASE("equitable two-colouring rejects low degree") {
    Graph c5 = generate("cycle(5)", 0);
    CHECK_THROWS_AS(equitable_two_colouring(c5, 1), Error);
}

TEST_CASE("equitable two-colouring property") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 1 + static_cast<int>(rng.below(3));
        int n = 12 + static_cast<int>(rng.below(20));
        Graph g = generate("min_degree(" + std::to_string(n) + "," + std::to_string(2 * k + 1) +
                               ")",
                           rng.next());
        std::vector<int> col = equitable_two_colouring(g, k);
        std::vector<int> c1(n, 0), c2(n, 0);
        for (int id = 0; id < g.m(); ++id) {
            REQUIRE(col[id] >= 1);
            REQUIRE(col[id] <= 2);
            (col[id] == 1 ? c1 : c2)[g.edges[id].u]++;
            (col[id] == 1 ? c1 : c2)[g.edges[id].v]++;
        }
        for (int v = 0; v < n; ++v) {
            CHECK(c1[v] >= k);
            CHECK(c2[v] >= k);
        }
    }
}

TEST_CASE("isolated edges: single edge avoids 0 and 1 mod 5") {
    Graph g = generate("matching(1)", 0);
    PartialLabelling lab = colour_isolated_edges(g, {0, 0}, 5);
    int64_t f = lab.label(0);
    CHECK(f >= 2);
    CHECK(f <= 4);
    CHECK(lab.sum(0) == f);
    CHECK(lab.sum(1) == f);
}

TEST_CASE("isolated edges: histogram bound at k=7") {
    Graph g = generate("matching(100)", 0);
    std::vector<int64_t> zero(g.n, 0);
    PartialLabelling lab = colour_isolated_edges(g, zero, 7);
    auto counts = naive_histogram(g, lab, VertexSet::full(g.n), 7);
    CHECK(counts[0] == 0);
    CHECK(counts[1] == 0);
    for (int i = 2; i < 7; ++i) CHECK(counts[i] <= 200 / 4 + 8); // |V|/(k-3) + k + 1 = 58
}

TEST_CASE("isolated edges: property over random potentials") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int edges = 1 + static_cast<int>(rng.below(50));
        Graph g = random_matching(edges, rng);
        std::vector<int64_t> base = random_potentials(g.n, 1000, rng);
        int64_t k = 5 + 2 * static_cast<int64_t>(rng.below(4));
        PartialLabelling lab = colour_isolated_edges(g, base, k);
        CHECK(sums_match_cache(g, lab));
        VertexSet matched(g.n);
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) == 1) matched.add(v);
        auto counts = naive_histogram(g, lab, matched, k);
        CHECK(counts[0] == 0);
        CHECK(counts[1] == 0);
        for (int64_t i = 2; i < k; ++i)
            CHECK(static_cast<double>(counts[i]) <=
                  static_cast<double>(matched.size()) / (k - 3) + k + 1 + 1e-9);
        for (int id = 0; id < g.m(); ++id) {
            CHECK(lab.label(id) >= 0);
            CHECK(lab.label(id) < k);
        }
    }
}

TEST_CASE("isolated edges rejects bad input") {
    Graph p3(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(colour_isolated_edges(p3, {0, 0, 0}, 5), Error);
    Graph m1 = generate("matching(1)", 0);
    CHECK_THROWS_AS(colour_isolated_edges(m1, {0, 0}, 4), Error);
    CHECK_THROWS_AS(colour_isolated_edges(m1, {0, 0}, 3), Error);
}

TEST_CASE("colour_mod_k on C5") {
    Graph c5 = generate("cycle(5)", 0);
    std::vector<int64_t> zero(5, 0);
    PartialLabelling lab = colour_mod_k(c5, zero, VertexSet::full(5), 5);
    auto counts = naive_histogram(c5, lab, VertexSet::full(5), 5);
    CHECK(counts[0] == 0);
    CHECK(counts[1] == 0);
    for (int i = 2; i < 5; ++i) CHECK(static_cast<double>(counts[i]) <= 5.0 / 2 + 7);
}

TEST_CASE("colour_mod_k constrains only S") {
    Graph p3(3, {{0, 1}, {1, 2}});
    std::vector<int64_t> zero(3, 0);
    PartialLabelling lab = colour_mod_k(p3, zero, VertexSet::of(3, {1}), 7);
    int64_t mid = mod_floor(lab.sum(1), 7);
    CHECK(mid != 0);
    CHECK(mid != 1);
}

TEST_CASE("colour_mod_k property: matchings with attached paths, mixed S") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        // disjoint edges plus paths glued on: build from a matching and extend
        int pairs = 5 + static_cast<int>(rng.below(30));
        std::vector<Edge> edges;
        int n = 2 * pairs;
        for (int i = 0; i < pairs; ++i) edges.push_back(Edge{2 * i, 2 * i + 1});
        int extra = static_cast<int>(rng.below(pairs));
        for (int i = 0; i < extra; ++i) {
            int tail = static_cast<int>(rng.below(n));
            edges.push_back(Edge{tail, n});
            edges.push_back(Edge{n, n + 1});
            n += 2;
        }
        Graph g(n, edges);
        bool has_isolated = false;
        for (int v = 0; v < g.n; ++v) has_isolated |= g.degree(v) == 0;
        REQUIRE(!has_isolated);
        VertexSet s(n);
        for (int v = 0; v < n; ++v)
            if (rng.bernoulli(0.6)) s.add(v);
        int64_t k = 9;
        std::vector<int64_t> base = random_potentials(n, 300, rng);
        PartialLabelling lab = colour_mod_k(g, base, s, k);
        CHECK(sums_match_cache(g, lab));
        auto counts = naive_histogram(g, lab, s, k);
        CHECK(counts[0] == 0);
        CHECK(counts[1] == 0);
        for (int64_t i = 2; i < k; ++i)
            CHECK(static_cast<double>(counts[i]) <=
                  static_cast<double>(s.size()) / (k - 3) + k + 2 + 1e-9);
    }
}

TEST_CASE("colour_mod_k rejects isolated vertices") {
    Graph g(3, {{0, 1}});
    CHECK_THROWS_AS(colour_mod_k(g, {0, 0, 0}, VertexSet::full(3), 5), Error);
}

TEST_CASE("label_two_moduli meets all four conditions") {
    Rng rng(17);
    TwoModuliInstance inst = two_moduli_instance(rng);
    std::vector<int64_t> phase1;
    PartialLabelling lab =
        label_two_moduli(inst.g, inst.base, inst.v1, inst.v2, 5, 7, inst.labels, &phase1);
    CHECK(sums_match_cache(inst.g, lab));

    // bijectivity onto L
    std::vector<int64_t> got = lab.raw_labels();
    std::sort(got.begin(), got.end());
    CHECK(got == inst.labels);

    auto c1 = naive_histogram(inst.g, lab, inst.v1, 5);
    CHECK(c1[0] == 0);
    CHECK(c1[1] == 0);
    for (int i = 2; i < 5; ++i)
        CHECK(static_cast<double>(c1[i]) <= inst.v1.size() / 2.0 + 7 + 1e-9);
    auto c2 = naive_histogram(inst.g, lab, inst.v2, 7);
    CHECK(c2[0] == 0);
    CHECK(c2[1] == 0);
    for (int i = 2; i < 7; ++i)
        CHECK(static_cast<double>(c2[i]) <= inst.v2.size() / 4.0 + 9 + 1e-9);

    // swap-phase unit check: phase 1 is bijective and already fixes V1;
    // phase 2 never changes a label modulo k1
    std::vector<int64_t> p1_sorted = phase1;
    std::sort(p1_sorted.begin(), p1_sorted.end());
    CHECK(p1_sorted == inst.labels);
    std::vector<int64_t> v1_sums(inst.g.n, 0);
    for (int v = 0; v < inst.g.n; ++v) v1_sums[v] = inst.base[v];
    for (int id = 0; id < inst.g.m(); ++id) {
        v1_sums[inst.g.edges[id].u] += phase1[id];
        v1_sums[inst.g.edges[id].v] += phase1[id];
    }
    for (int v : inst.v1.members()) {
        int64_t r = mod_floor(v1_sums[v], 5);
        CHECK(r != 0);
        CHECK(r != 1);
    }
    for (int id = 0; id < inst.g.m(); ++id)
        CHECK(mod_floor(phase1[id], 5) == mod_floor(lab.label(id), 5));
}

TEST_CASE("label_two_moduli rejects a sparse V1") {
    Rng rng(3);
    TwoModuliInstance inst = two_moduli_instance(rng);
    // delete most V1-internal edges
    std::vector<Edge> edges;
    int dropped = 0;
    for (const Edge& e : inst.g.edges) {
        if (inst.v1.contains(e.u) && inst.v1.contains(e.v) && dropped < inst.g.m() * 9 / 10) {
            ++dropped;
            continue;
        }
        edges.push_back(e);
    }
    Graph sparse(inst.g.n, edges);
    std::vector<int64_t> labels(sparse.m());
    for (int i = 0; i < sparse.m(); ++i) labels[i] = i + 1;
    bool isolated = false;
    for (int v = 0; v < sparse.n; ++v) isolated |= sparse.degree(v) == 0;
    if (!isolated)
        CHECK_THROWS_WITH_AS(
            label_two_moduli(sparse, inst.base, inst.v1, inst.v2, 5, 7, labels),
            doctest::Contains("E(V1)"), Error);
}

TEST_CASE("colour_AB on a star") {
    // K_{1,4}: centre 0 in A, leaves in B, Bp = two leaves
    Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    VertexSet a = VertexSet::of(5, {0});
    VertexSet b = VertexSet::of(5, {1, 2, 3, 4});
    VertexSet bp = VertexSet::of(5, {1, 2});
    std::vector<int64_t> t(5, 0);
    t[0] = 1;
    std::vector<int64_t> labels;
    for (int64_t l = 1; l <= 4 + 35 * (2 + 2); ++l) labels.push_back(l);
    std::vector<int64_t> zero(5, 0);
    PartialLabelling lab = colour_AB(g, zero, a, b, bp, t, 7, 5, labels);
    CHECK(mod_floor(lab.sum(0), 35) == 1);
    for (int v : {1, 2}) {
        int64_t r = mod_floor(lab.sum(v), 7);
        CHECK(r != 0);
        CHECK(r != 1);
    }
    // injectivity
    std::set<int64_t> seen;
    for (int id = 0; id < g.m(); ++id) {
        CHECK(!seen.count(lab.label(id)));
        seen.insert(lab.label(id));
    }
}

TEST_CASE("colour_AB precondition failures") {
    // A empty but Bp nonempty: B' vertices have no edge to A
    Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
    VertexSet a(3);
    VertexSet b = VertexSet::full(3);
    VertexSet bp = VertexSet::of(3, {0});
    std::vector<int64_t> t(3, 0), zero(3, 0);
    std::vector<int64_t> labels;
    for (int64_t l = 1; l <= 100; ++l) labels.push_back(l);
    CHECK_THROWS_AS(colour_AB(g, zero, a, b, bp, t, 7, 5, labels), Error);
}

TEST_CASE("colour_AB property on random bipartite-ish instances") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        int64_t k1 = 5 + 2 * static_cast<int64_t>(rng.below(3));
        int64_t k2 = 3 + 2 * static_cast<int64_t>(rng.below(3));
        ABInstance inst = ab_instance(rng, 10, 50, 30, k1, k2);
        PartialLabelling lab =
            colour_AB(inst.g, inst.base, inst.a, inst.b, inst.bp, inst.targets, k1, k2,
                      inst.labels);
        CHECK(sums_match_cache(inst.g, lab));
        for (int v : inst.a.members())
            CHECK(mod_floor(lab.sum(v), k1 * k2) == mod_floor(inst.targets[v], k1 * k2));
        auto counts = naive_histogram(inst.g, lab, inst.bp, k1);
        CHECK(counts[0] == 0);
        CHECK(counts[1] == 0);
        for (int64_t i = 2; i < k1; ++i)
            CHECK(static_cast<double>(counts[i]) <=
                  static_cast<double>(inst.bp.size()) / (k1 - 4) + 2 * k1 - 3 + 1e-9);
        std::set<int64_t> seen;
        for (int id = 0; id < inst.g.m(); ++id) {
            CHECK(!seen.count(lab.label(id)));
            seen.insert(lab.label(id));
        }
    }
}

namespace {

void check_boundary(const Graph& g, const VertexSet& v0, const VertexSet& v1, int64_t k) {
    std::vector<int> colour = colour_boundary_divisible(g, v0, v1, k);
    std::vector<int64_t> sums(g.n, 0);
    int64_t domain = 0;
    std::vector<int64_t> usage(k, 0);
    for (int id = 0; id < g.m(); ++id) {
        bool in_domain = v0.contains(g.edges[id].u) || v0.contains(g.edges[id].v);
        CHECK((colour[id] >= 0) == in_domain);
        if (colour[id] >= 0) {
            ++domain;
            ++usage[colour[id]];
            sums[g.edges[id].u] += colour[id];
            sums[g.edges[id].v] += colour[id];
        }
    }
    for (int v : v0.members()) CHECK(mod_floor(sums[v], k) == 0);
    for (int64_t c = 0; c < k; ++c)
        CHECK(static_cast<double>(usage[c]) <=
              static_cast<double>(domain) / k + v0.size() + 1e-9);
}

} // namespace

TEST_CASE("colour_boundary_divisible: pendant path with nonempty V1") {
    // triangle core {0,1,2} with pendant path 3-4 hanging off 0
    Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}});
    VertexSet v0 = VertexSet::of(5, {3, 4});
    VertexSet v1 = VertexSet::of(5, {0, 1, 2});
    check_boundary(g, v0, v1, 5);
}

TEST_CASE("colour_boundary_divisible: odd cycle with empty V1") {
    Graph c5 = generate("cycle(5)", 0);
    check_boundary(c5, VertexSet::full(5), VertexSet(5), 3);
}

TEST_CASE("colour_boundary_divisible: bipartite with empty V1") {
    Graph c4 = generate("cycle(4)", 0);
    check_boundary(c4, VertexSet::full(4), VertexSet(4), 5);
}

TEST_CASE("colour_boundary_divisible rejects even k") {
    Graph c4 = generate("cycle(4)", 0);
    CHECK_THROWS_AS(colour_boundary_divisible(c4, VertexSet::full(4), VertexSet(4), 4), Error);
}

TEST_CASE("colour_boundary_divisible property") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 6 + static_cast<int>(rng.below(30));
        Graph g = gnp_no_isolated(n, 0.15 + 0.4 * rng.unit(), rng);
        VertexSet v0(n), v1(n);
        for (int v = 0; v < n; ++v) (rng.bernoulli(0.5) ? v0 : v1).add(v);
        int64_t k = 3 + 2 * static_cast<int64_t>(rng.below(4));
        check_boundary(g, v0, v1, k);
    }
}

TEST_CASE("label_boundary on a triangle with a pendant vertex") {
    Graph g(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
    PartialLabelling lab = label_boundary(g, 2, 5, Interval{1, 40});
    // 2-core is the triangle; V0 = {3}; its one edge carries its sum
    CHECK(lab.has(3));
    CHECK(mod_floor(lab.sum(3), 5) == 0);
    CHECK(lab.label(3) >= 1);
    CHECK(lab.label(3) <= 40);
}

TEST_CASE("label_boundary rejects isolated edges and double isolated vertices") {
    Graph k2 = generate("matching(1)", 0);
    CHECK_THROWS_AS(label_boundary(k2, 2, 5, Interval{1, 100}), Error);
    Graph two_iso(5, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(label_boundary(two_iso, 2, 5, Interval{1, 100}), Error);
}

TEST_CASE("label_boundary property: distinct divisible shell sums") {
    Rng rng(53);
    int done = 0;
    for (int trial = 0; done < 40 && trial < 400; ++trial) {
        int n = 20 + static_cast<int>(rng.below(40));
        Graph g = generate("gnp(" + std::to_string(n) + ",0.1)", rng.next());
        int isolated = 0;
        bool iso_edge = false;
        for (int v = 0; v < g.n; ++v)
            if (g.degree(v) == 0) ++isolated;
        for (const VertexSet& comp : connected_components(g))
            if (comp.size() == 2) iso_edge = true;
        if (isolated > 1 || iso_edge) continue;
        ++done;
        int delta = 4;
        int64_t k = 15;
        CoreSplit core = r_core(g, delta);
        Interval interval{1, (delta - 1 + 3 * k) * std::max<int64_t>(core.shell.size(), 1)};
        PartialLabelling lab = label_boundary(g, delta, k, interval);
        CHECK(sums_match_cache(g, lab));
        std::set<int64_t> used;
        std::set<int64_t> shell_sums;
        for (int id = 0; id < g.m(); ++id)
            if (lab.has(id)) {
                CHECK(interval.contains(lab.label(id)));
                CHECK(!used.count(lab.label(id)));
                used.insert(lab.label(id));
            }
        for (int v : core.shell.members()) {
            CHECK(mod_floor(lab.sum(v), k) == 0);
            CHECK(!shell_sums.count(lab.sum(v)));
            shell_sums.insert(lab.sum(v));
        }
    }
    CHECK(done == 40);
}
