#include "antimagic/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "antimagic/errors.hpp"
#include "antimagic/verify.hpp"

namespace antimagic {

void validate_config(const PipelineConfig& cfg) {
    if (cfg.k1 < 9 || cfg.k2 < 9) fail_precondition("config: k1 and k2 must be at least 9");
    if (cfg.k1 % 2 == 0 || cfg.k2 % 2 == 0) fail_precondition("config: k1 and k2 must be odd");
    if (std::gcd(cfg.k1, cfg.k2) != 1) fail_precondition("config: k1 and k2 must be coprime");
    if (cfg.bipartition_trials < 1 || cfg.dominating_trials < 1)
        fail_precondition("config: trial counts must be positive");
}

Constants constants(int64_t k1, int64_t k2) {
    if (k1 < 9 || k2 < 9 || k1 % 2 == 0 || k2 % 2 == 0 || std::gcd(k1, k2) != 1)
        fail_precondition("constants: k1, k2 must be coprime odd integers >= 9");
    int64_t div = std::min(k1 - 4, k2 - 3);
    if (0.5 - 2.0 / static_cast<double>(div) <= 0.0)
        fail_precondition("constants: slack 1/2 - 2/min(k1-4,k2-3) is nonpositive");

    Constants out;
    out.c = 2 * k1 * k2 + k2;
    double mp = std::max(m_prime(static_cast<double>(k1 * k2 + 1), static_cast<double>(k1 + 1)),
                         m_prime(static_cast<double>(k1 * k2 + 1), static_cast<double>(k2 + 1)));
    double rhs = std::max(static_cast<double>(out.c), mp + 1.0) +
                 static_cast<double>(6 * k1 + 2 * k2 + 2);
    auto lhs = [&](int d) {
        return d * (0.5 - z_bound(5, d) - 2.0 / static_cast<double>(div));
    };
    int hi = 8;
    while (lhs(hi) < rhs) {
        hi *= 2;
        if (hi > (1 << 26)) fail_internal("constants: delta search diverged");
    }
    int lo = std::max(5, hi / 2);
    while (lo + 1 < hi) {
        int mid = lo + (hi - lo) / 2;
        if (lhs(mid) >= rhs)
            hi = mid;
        else
            lo = mid;
    }
    while (hi > 6 && lhs(hi - 1) >= rhs) --hi; // guard against non-monotone corners
    out.delta = hi;
    out.d0 = 2 * std::max(out.c, static_cast<int64_t>(out.delta) - 1 + 3 * k1 * k2);
    return out;
}

PartitionDims choose_partition_dims(int n, int64_t k1, int64_t k2) {
    PartitionDims dims;
    const int64_t kk = k1 * k2;
    dims.r1 = (kk + 1) * n;
    dims.r2 = (k1 + 1) * n;
    double mp = std::max(m_prime(static_cast<double>(kk + 1), static_cast<double>(k1 + 1)),
                         m_prime(static_cast<double>(kk + 1), static_cast<double>(k2 + 1)));
    dims.r = std::max({2 * (kk + k1) * static_cast<int64_t>(n),
                       (2 * kk + k2) * static_cast<int64_t>(n),
                       static_cast<int64_t>(std::ceil(mp * n)) + n});
    return dims;
}

namespace {

// sorted pool minus sorted consumed values, in place
void subtract_pool(std::vector<int64_t>& pool, const std::vector<int64_t>& consumed) {
    if (consumed.empty()) return;
    std::vector<int64_t> rest;
    rest.reserve(pool.size());
    std::set_difference(pool.begin(), pool.end(), consumed.begin(), consumed.end(),
                        std::back_inserter(rest));
    pool = std::move(rest);
}

std::vector<int64_t> merge_pools(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    std::vector<int64_t> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

LabelPools plan_label_pools(const Graph& g, const PartitionPlan& plan,
                            const std::vector<int64_t>& labels, const PipelineConfig& cfg) {
    const int64_t n = g.n;
    const int64_t kk = cfg.k1 * cfg.k2;
    const int64_t c = 2 * kk + cfg.k2;
    if (static_cast<int64_t>(labels.size()) != g.m())
        fail_precondition("plan_label_pools: |L| != |E|");

    std::vector<int64_t> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (int64_t want = 1; want <= c * n; ++want)
        if (!std::binary_search(sorted.begin(), sorted.end(), want))
            fail_precondition("plan_label_pools: L missing required prefix value " +
                              std::to_string(want));

    const int64_t f_sz = static_cast<int64_t>(plan.forest_edges.size());
    const int64_t v1_sz = plan.stars.v1.size();
    const int64_t v2_sz = plan.stars.v2.size();
    const int64_t u3_sz = plan.u3.size();
    const int64_t v3_sz = plan.stars.v0.size() - u3_sz; // |V0 \ U3|
    if (v1_sz > v2_sz) fail_precondition("plan_label_pools: |V1| > |V2|");
    require(f_sz <= n - 1, "plan_label_pools: forest has >= n edges");

    LabelPools pools;
    pools.k1 = cfg.k1;
    pools.k2 = cfg.k2;
    for (pools.m_elem = 0; pools.m_elem < kk; ++pools.m_elem)
        if (pools.m_elem % cfg.k1 == 0 && pools.m_elem % cfg.k2 == 1) break;
    require(pools.m_elem < kk, "plan_label_pools: CRT element not found");

    for (int64_t i = 1; i <= f_sz; ++i) pools.l4.push_back(kk * i);
    for (int64_t l = 1; l <= kk * n; ++l)
        if (l % kk != 0 || l > kk * f_sz) pools.l1.push_back(l);
    int64_t top = kk * n;
    for (int64_t i = 1; i <= kk * (2 * v1_sz + u3_sz); ++i) pools.l2.push_back(top + i);
    top += kk * (2 * v1_sz + u3_sz);
    int64_t len3 = v3_sz >= 1 ? (v3_sz - 1) * (kk + cfg.k2) : 0;
    for (int64_t i = 1; i <= len3; ++i) pools.l3.push_back(top + i);
    top += len3;
    require(top < c * n || (top == 0), "plan_label_pools: structured pools exceed (2k1k2+k2)n");

    std::vector<int64_t> structured;
    structured.reserve(pools.l1.size() + pools.l2.size() + pools.l3.size() + pools.l4.size());
    for (const auto* p : {&pools.l1, &pools.l2, &pools.l3, &pools.l4})
        structured.insert(structured.end(), p->begin(), p->end());
    std::sort(structured.begin(), structured.end());
    std::set_difference(sorted.begin(), sorted.end(), structured.begin(), structured.end(),
                        std::back_inserter(pools.lt));
    require(pools.lt.size() + structured.size() == sorted.size(),
            "plan_label_pools: pools are not a partition of L");

    int64_t e12 = static_cast<int64_t>(plan.edge_class[0].size() + plan.edge_class[1].size());
    require(static_cast<int64_t>(pools.lt.size()) >= e12, "plan_label_pools: |LT| < |E1 ∪ E2|");
    return pools;
}

PipelineState::PipelineState(const Graph& graph, const PartitionPlan& p, const LabelPools& pools,
                             const std::vector<int64_t>& base, const PipelineConfig& config)
    : g(&graph), plan(&p), cfg(config), m_elem(pools.m_elem), lab(graph, base), l1_free(pools.l1),
      l2_free(pools.l2), l3_free(pools.l3), l4_free(pools.l4), lt_free(pools.lt) {}

void stage_e1(PipelineState& st) {
    const Graph& g = *st.g;
    const PartitionPlan& plan = *st.plan;
    const int64_t kk = st.cfg.k1 * st.cfg.k2;
    const int64_t kkn = kk * g.n;
    const auto& e1 = plan.edge_class[0];

    std::vector<uint8_t> is_centre(g.n, 0);
    for (const Star& s : plan.stars.stars) is_centre[s.centre] = 1;

    // two non-F edges into V0 ∪ V1 per V2 vertex (partition condition 6)
    std::vector<uint8_t> chosen(g.m(), 0);
    std::vector<std::pair<int, int>> pair_of(g.n, {-1, -1});
    for (int v : plan.stars.v2.members()) {
        std::vector<int> cand;
        for (auto [w, id] : g.adj[v])
            if (plan.class_of[id] == 1 && !plan.stars.v2.contains(w)) cand.push_back(id);
        std::sort(cand.begin(), cand.end());
        require(cand.size() >= 2, "stage E1: V2 vertex lacks two non-forest edges to V0 ∪ V1");
        chosen[cand[0]] = chosen[cand[1]] = 1;
        pair_of[v] = {cand[0], cand[1]};
    }

    // bulk edges take throwaway labels from LT
    std::vector<int64_t> lt_used;
    {
        size_t cur = 0;
        for (int id : e1) {
            if (chosen[id]) continue;
            require(cur < st.lt_free.size(), "stage E1: LT exhausted");
            st.lab.set(id, st.lt_free[cur]);
            lt_used.push_back(st.lt_free[cur]);
            ++cur;
        }
    }
    subtract_pool(st.lt_free, lt_used);

    // the chosen pair at each V2 vertex steers its sum mod k1k2·n
    std::set<int64_t> avail(st.l1_free.begin(), st.l1_free.end());
    std::vector<int64_t> l1_used;
    for (int v : plan.stars.v2.members()) {
        require(static_cast<int64_t>(avail.size()) > kkn / 2,
                "stage E1: remaining L1 labels not above k1k2·n/2");
        int64_t target = is_centre[v] ? 1 : st.m_elem;
        int64_t need = mod_floor(target - st.lab.sum(v), kkn);
        int64_t a = -1, b = -1;
        for (int64_t cand : avail) {
            int64_t rem = mod_floor(need - cand, kkn);
            int64_t partner = rem == 0 ? kkn : rem; // labels of [1,k1k2n] by residue
            if (partner != cand && avail.count(partner)) {
                a = cand;
                b = partner;
                break;
            }
        }
        require(a != -1, "stage E1: no label pair available");
        avail.erase(a);
        avail.erase(b);
        l1_used.push_back(a);
        l1_used.push_back(b);
        st.lab.set(pair_of[v].first, a);
        st.lab.set(pair_of[v].second, b);
    }
    std::sort(l1_used.begin(), l1_used.end());
    subtract_pool(st.l1_free, l1_used);

    for (int v : plan.stars.v2.members()) {
        int64_t want = is_centre[v] ? 1 : st.m_elem;
        require(mod_floor(st.lab.sum(v), kkn) == want, "stage E1: V2 residue mod k1k2·n missed");
    }
}

void stage_e2(PipelineState& st) {
    const Graph& g = *st.g;
    const PartitionPlan& plan = *st.plan;
    const int64_t kk = st.cfg.k1 * st.cfg.k2;
    const auto& e2 = plan.edge_class[1];
    if (e2.empty()) {
        require(plan.stars.v1.empty() && plan.u3.empty(),
                "stage E2: no E2 edges but V1 or U3 nonempty");
        return;
    }

    VertexSet v01(g.n);
    for (int v = 0; v < g.n; ++v)
        if (!plan.stars.v2.contains(v)) v01.add(v);
    Subgraph sub = make_subgraph(g, v01, e2);
    std::vector<int64_t> base_sub(sub.graph.n), targets(sub.graph.n, 0);
    VertexSet a_sub(sub.graph.n), b_sub(sub.graph.n), bp_sub(sub.graph.n);
    for (int i = 0; i < sub.graph.n; ++i) {
        int pv = sub.to_parent_vertex[i];
        base_sub[i] = st.lab.sum(pv);
        if (plan.stars.v1.contains(pv)) {
            a_sub.add(i);
            targets[i] = 1;
        } else {
            b_sub.add(i);
            if (plan.u3.contains(pv)) bp_sub.add(i);
        }
    }

    std::vector<int64_t> pool = merge_pools(st.l2_free, st.lt_free);
    PartialLabelling out =
        colour_AB(sub.graph, base_sub, a_sub, b_sub, bp_sub, targets, st.cfg.k1, st.cfg.k2, pool);

    std::vector<int64_t> used;
    for (int i = 0; i < sub.graph.m(); ++i) {
        st.lab.set(sub.to_parent_edge[i], out.label(i));
        used.push_back(out.label(i));
    }
    std::sort(used.begin(), used.end());
    subtract_pool(st.l2_free, used);
    subtract_pool(st.lt_free, used);

    for (int v : plan.stars.v1.members())
        require(mod_floor(st.lab.sum(v), kk) == 1, "stage E2: V1 sum not 1 mod k1k2");
    ResidueHistogram h = residue_histogram(st.lab, plan.u3, st.cfg.k1);
    require(h.counts[0] == 0 && h.counts[1] == 0, "stage E2: U3 residue 0/1 present");
    for (int64_t i = 2; i < st.cfg.k1; ++i)
        require(static_cast<double>(h.counts[i]) <=
                    static_cast<double>(plan.u3.size()) / (st.cfg.k1 - 4) + 2 * st.cfg.k1 - 3 +
                        1e-9,
                "stage E2: U3 histogram bound");
    const int64_t kkn = kk * g.n;
    std::vector<uint8_t> is_centre(g.n, 0);
    for (const Star& s : plan.stars.stars) is_centre[s.centre] = 1;
    for (int v : plan.stars.v2.members())
        require(mod_floor(st.lab.sum(v), kkn) == (is_centre[v] ? 1 : st.m_elem),
                "stage E2: V2 residue disturbed");
}

void stage_e3(PipelineState& st) {
    const Graph& g = *st.g;
    const PartitionPlan& plan = *st.plan;
    const auto& e3 = plan.edge_class[2];

    VertexSet vp(g.n);
    for (int v : plan.stars.v0.members())
        if (!plan.u3.contains(v)) vp.add(v);

    std::vector<int64_t> pool =
        merge_pools(merge_pools(st.l1_free, st.l2_free), merge_pools(st.l3_free, st.lt_free));
    require(pool.size() == e3.size(),
            "stage E3: leftover label count does not match |E3| (" + std::to_string(pool.size()) +
                " vs " + std::to_string(e3.size()) + ")");
    if (e3.empty()) return;

    Subgraph sub = make_subgraph(g, vp, e3);
    std::vector<int64_t> base_sub(sub.graph.n);
    VertexSet u1_sub(sub.graph.n), u2_sub(sub.graph.n);
    for (int i = 0; i < sub.graph.n; ++i) {
        int pv = sub.to_parent_vertex[i];
        base_sub[i] = st.lab.sum(pv);
        (plan.u1.contains(pv) ? u1_sub : u2_sub).add(i);
    }

    PartialLabelling out =
        label_two_moduli(sub.graph, base_sub, u1_sub, u2_sub, st.cfg.k1, st.cfg.k2, pool);
    for (int i = 0; i < sub.graph.m(); ++i) st.lab.set(sub.to_parent_edge[i], out.label(i));
    st.l1_free.clear();
    st.l2_free.clear();
    st.l3_free.clear();
    st.lt_free.clear();

    for (int side = 0; side < 2; ++side) {
        const VertexSet& us = side == 0 ? plan.u1 : plan.u2;
        int64_t k = side == 0 ? st.cfg.k1 : st.cfg.k2;
        VertexSet uprime(g.n);
        for (int v : us.members())
            if (!plan.u3.contains(v)) uprime.add(v);
        ResidueHistogram h = residue_histogram(st.lab, uprime, k);
        require(h.counts[0] == 0 && h.counts[1] == 0, "stage E3: U' residue 0/1 present");
        for (int64_t i = 2; i < k; ++i)
            require(static_cast<double>(h.counts[i]) <=
                        static_cast<double>(uprime.size()) / (k - 3) + k + 2 + 1e-9,
                    "stage E3: U' histogram bound");
    }
    const int64_t kk = st.cfg.k1 * st.cfg.k2;
    for (int v : plan.stars.v1.members())
        require(mod_floor(st.lab.sum(v), kk) == 1, "stage E3: V1 condition disturbed");
    ResidueHistogram h3 = residue_histogram(st.lab, plan.u3, st.cfg.k1);
    require(h3.counts[0] == 0 && h3.counts[1] == 0, "stage E3: U3 condition disturbed");
}

void stage_e4(PipelineState& st) {
    const Graph& g = *st.g;
    const PartitionPlan& plan = *st.plan;
    const int64_t k1 = st.cfg.k1, k2 = st.cfg.k2, kk = k1 * k2;
    const auto& e4 = plan.edge_class[3];
    const auto& e5 = plan.edge_class[4];
    const VertexSet& v0 = plan.stars.v0;

    int64_t u3_sz = plan.u3.size();
    int64_t u1p_sz = 0, u2p_sz = 0;
    for (int v : plan.u1.members())
        if (!plan.u3.contains(v)) ++u1p_sz;
    for (int v : plan.u2.members())
        if (!plan.u3.contains(v)) ++u2p_sz;
    const double conflict_bound = 2.0 * (static_cast<double>(u3_sz) / (k1 - 4) +
                                         static_cast<double>(u1p_sz) / (k1 - 3) +
                                         static_cast<double>(u2p_sz) / (k2 - 3)) +
                                  6 * k1 + 2 * k2 - 2;

    std::set<int64_t> avail(st.l4_free.begin(), st.l4_free.end());
    std::vector<int> order = e4;
    std::sort(order.begin(), order.end());
    for (int e : order) {
        require(static_cast<int64_t>(avail.size()) >=
                    static_cast<int64_t>(e5.size()) + 1,
                "stage E4: fewer than |E5|+1 labels remain");
        const Edge& edge = g.edges[e];
        std::unordered_set<int64_t> forbidden;
        for (int w : {edge.u, edge.v}) {
            if (!v0.contains(w)) continue;
            for (int vp : v0.members()) {
                if (vp == edge.u || vp == edge.v) continue;
                forbidden.insert(st.lab.sum(vp) - st.lab.sum(w));
            }
        }
        int64_t chosen = -1;
        int64_t skipped = 0;
        for (int64_t cand : avail) {
            if (forbidden.count(cand)) {
                ++skipped;
                continue;
            }
            chosen = cand;
            break;
        }
        require(static_cast<double>(skipped) <= conflict_bound + 1e-9,
                "stage E4: conflicts exceed the residue-class bound");
        if (chosen == -1) {
            if (st.cfg.skip_delta_check)
                fail_construction("stage E4: greedy exhausted at edge " + std::to_string(e) +
                                  " (graph below the proven delta threshold)");
            fail_internal("stage E4: greedy exhausted despite delta check");
        }
        avail.erase(chosen);
        st.lab.set(e, chosen);
    }
    st.l4_free.assign(avail.begin(), avail.end());

    std::vector<int64_t> sums;
    for (int v : v0.members()) {
        int64_t s = st.lab.sum(v);
        int64_t r = mod_floor(s, kk);
        require(r != 0 && r != 1 && r != st.m_elem, "stage E4: V0 sum in {0,1,m} mod k1k2");
        sums.push_back(s);
    }
    std::sort(sums.begin(), sums.end());
    require(std::adjacent_find(sums.begin(), sums.end()) == sums.end(),
            "stage E4: duplicate V0 sums");
    for (int v : plan.stars.v1.members())
        require(mod_floor(st.lab.sum(v), kk) == 1, "stage E4: V1 condition disturbed");
}

std::vector<std::pair<int, int64_t>> label_stars(const Graph& g, const std::vector<Star>& stars,
                                                 const std::vector<int64_t>& labels,
                                                 const std::vector<int64_t>& current_sums) {
    (void)g; // stars carry their own edge ids
    size_t total = 0;
    for (const Star& s : stars) total += s.edge_ids.size();
    if (labels.size() != total)
        fail_precondition("label_stars: label count " + std::to_string(labels.size()) +
                          " does not match star edge count " + std::to_string(total));
    std::vector<int64_t> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int64_t> prefix(sorted.size() + 1, 0);
    for (size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];

    std::vector<std::pair<int, int64_t>> out;
    std::vector<int> remaining(stars.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    size_t cursor = 0;
    std::vector<int64_t> final_sum(stars.size(), 0);
    while (!remaining.empty()) {
        // the star whose centre would get the smallest sum from the smallest
        // remaining labels goes first; its bound survives the recursion
        int best_pos = -1;
        int64_t best_val = 0;
        for (size_t pos = 0; pos < remaining.size(); ++pos) {
            const Star& s = stars[remaining[pos]];
            int64_t val = current_sums[s.centre] + prefix[cursor + s.edge_ids.size()] -
                          prefix[cursor];
            if (best_pos == -1 || val < best_val) {
                best_pos = static_cast<int>(pos);
                best_val = val;
            }
        }
        const Star& s = stars[remaining[best_pos]];
        std::vector<int> eids = s.edge_ids;
        std::sort(eids.begin(), eids.end());
        for (int eid : eids) out.emplace_back(eid, sorted[cursor++]);
        final_sum[remaining[best_pos]] = best_val;
        remaining.erase(remaining.begin() + best_pos);
    }
    std::vector<int64_t> check = final_sum;
    std::sort(check.begin(), check.end());
    require(std::adjacent_find(check.begin(), check.end()) == check.end(),
            "label_stars: centre sums collide");
    return out;
}

void stage_e5(PipelineState& st) {
    const Graph& g = *st.g;
    const PartitionPlan& plan = *st.plan;
    const int64_t kk = st.cfg.k1 * st.cfg.k2;

    std::vector<int64_t> sums(g.n);
    for (int v = 0; v < g.n; ++v) sums[v] = st.lab.sum(v);
    auto assignment = label_stars(g, plan.stars.stars, st.l4_free, sums);
    for (auto [e, l] : assignment) st.lab.set(e, l);
    st.l4_free.clear();

    require(st.lab.total(), "stage E5: labelling incomplete");
    std::vector<uint8_t> is_centre(g.n, 0);
    for (const Star& s : plan.stars.stars) is_centre[s.centre] = 1;
    for (int v = 0; v < g.n; ++v) {
        int64_t r = mod_floor(st.lab.sum(v), kk);
        require(r != 0, "stage E5: sum divisible by k1k2");
        if (plan.stars.v1.contains(v) || (plan.stars.v2.contains(v) && is_centre[v]))
            require(r == 1, "stage E5: centre residue not 1");
        else if (plan.stars.v2.contains(v))
            require(r == st.m_elem, "stage E5: V2 non-centre residue not m");
        else
            require(r != 1 && r != st.m_elem, "stage E5: V0 residue collides with a class");
    }
    std::vector<int64_t> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = st.lab.sum(v);
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(),
            "stage E5: duplicate sums survive");
}

namespace {

template <typename F>
void run_stage(const char* name, F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(name) + ": " + e.what());
    }
}

} // namespace

PartialLabelling label_min_degree(const Graph& g, const std::vector<int64_t>& labels,
                                  const std::vector<int64_t>& base, const PipelineConfig& cfg) {
    validate_config(cfg);
    Constants consts = constants(cfg.k1, cfg.k2);
    const int64_t n = g.n;
    if (static_cast<int64_t>(labels.size()) != g.m())
        fail_precondition("label_min_degree: |L| != |E|");
    if (static_cast<int64_t>(base.size()) != n)
        fail_precondition("label_min_degree: base size mismatch");

    int min_deg = g.min_degree();
    int delta_used = consts.delta;
    if (min_deg < consts.delta) {
        if (!cfg.skip_delta_check)
            fail_precondition("label_min_degree: min degree " + std::to_string(min_deg) +
                              " below the certified delta = " + std::to_string(consts.delta) +
                              " (pass skip_delta_check to experiment)");
        delta_used = min_deg;
        if (delta_used < 5) fail_precondition("label_min_degree: min degree below 5");
    }

    {
        std::vector<int64_t> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        int64_t need = consts.c * n;
        for (int64_t want = 1; want <= need; ++want)
            if (!std::binary_search(sorted.begin(), sorted.end(), want))
                fail_precondition("label_min_degree: {1,...,c·n} not contained in L (missing " +
                                  std::to_string(want) + ")");
    }

    PartitionDims dims = choose_partition_dims(g.n, cfg.k1, cfg.k2);
    if (2 * dims.r > static_cast<int64_t>(delta_used) * n)
        fail_construction("label_min_degree: r = " + std::to_string(dims.r) +
                          " exceeds delta·n/2; graph too small for the partition step");

    Rng rng(cfg.seed);
    PartitionPlan plan;
    run_stage("build_partition", [&] {
        plan = build_partition(g, delta_used, dims.r, dims.r1, dims.r2, rng.split(0x706c616e));
    });
    LabelPools pools;
    run_stage("plan_label_pools", [&] { pools = plan_label_pools(g, plan, labels, cfg); });

    PipelineState st(g, plan, pools, base, cfg);
    run_stage("stage E1", [&] { stage_e1(st); });
    run_stage("stage E2", [&] { stage_e2(st); });
    run_stage("stage E3", [&] { stage_e3(st); });
    run_stage("stage E4", [&] { stage_e4(st); });
    run_stage("stage E5", [&] { stage_e5(st); });

    VerificationReport rep =
        verify_g_antimagic(g, st.lab.raw_labels(), base, cfg.k1 * cfg.k2);
    require(rep.labels_injective && rep.duplicate_sums.empty() && rep.mod_violations.empty(),
            "label_min_degree: final verification failed");
    {
        std::vector<int64_t> got = st.lab.raw_labels();
        std::sort(got.begin(), got.end());
        std::vector<int64_t> want = labels;
        std::sort(want.begin(), want.end());
        require(got == want, "label_min_degree: labelling not bijective onto L");
    }
    return std::move(st.lab);
}

PartialLabelling label_graph(const Graph& g, const PipelineConfig& cfg) {
    validate_config(cfg);
    Constants consts = constants(cfg.k1, cfg.k2);
    const int64_t kk = cfg.k1 * cfg.k2;
    const int64_t m = g.m();

    int isolated = 0;
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) == 0) ++isolated;
    if (isolated > 1) fail_precondition("label_graph: two isolated vertices (not antimagic)");
    for (const VertexSet& comp : connected_components(g))
        if (comp.size() == 2) fail_precondition("label_graph: isolated edge (not antimagic)");
    if (g.average_degree() < static_cast<double>(consts.d0))
        fail_precondition("label_graph: average degree " + std::to_string(g.average_degree()) +
                          " below d0 = " + std::to_string(consts.d0));

    std::vector<int64_t> all_labels(m);
    std::iota(all_labels.begin(), all_labels.end(), 1);

    CoreSplit core = r_core(g, consts.delta);
    if (core.shell.empty()) {
        std::vector<int64_t> zero(g.n, 0);
        return label_min_degree(g, all_labels, zero, cfg);
    }

    const int64_t v0_sz = core.shell.size();
    const int64_t blen = (static_cast<int64_t>(consts.delta) - 1 + 3 * kk) * v0_sz;
    require(m >= blen, "label_graph: not enough labels for the boundary interval");
    PartialLabelling boundary = label_boundary(g, consts.delta, kk, Interval{m - blen + 1, m});

    std::vector<uint8_t> used(m + 1, 0);
    std::vector<int> boundary_edges;
    for (int id = 0; id < g.m(); ++id)
        if (boundary.has(id)) {
            used[boundary.label(id)] = 1;
            boundary_edges.push_back(id);
        }
    std::vector<int64_t> core_labels;
    for (int64_t l = 1; l <= m; ++l)
        if (!used[l]) core_labels.push_back(l);

    require(m - blen >= consts.c * core.core.size(),
            "label_graph: L does not contain [1, c|V1|] for the core stage");

    EdgeSet core_edges = induced_edges(g, core.core);
    Subgraph core_sub = make_subgraph(g, core.core, core_edges.members());
    require(static_cast<int64_t>(core_labels.size()) == core_sub.graph.m(),
            "label_graph: core label count mismatch");
    std::vector<int64_t> core_base(core_sub.graph.n);
    for (int i = 0; i < core_sub.graph.n; ++i)
        core_base[i] = boundary.sum(core_sub.to_parent_vertex[i]);

    PartialLabelling core_lab = label_min_degree(core_sub.graph, core_labels, core_base, cfg);

    PartialLabelling full(g);
    for (int id : boundary_edges) full.set(id, boundary.label(id));
    for (int i = 0; i < core_sub.graph.m(); ++i)
        full.set(core_sub.to_parent_edge[i], core_lab.label(i));
    require(full.total(), "label_graph: combined labelling incomplete");

    VerificationReport rep = verify_antimagic(g, full.raw_labels());
    require(rep.ok(), "label_graph: final antimagic verification failed");
    return full;
}

} // namespace antimagic
