#include "antimagic/verify.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "antimagic/errors.hpp"

namespace antimagic {

namespace {

std::vector<int64_t> induced_sums(const Graph& g, const std::vector<int64_t>& labels,
                                  const std::vector<int64_t>* base) {
    std::vector<int64_t> sums(g.n, 0);
    if (base) sums = *base;
    for (int id = 0; id < g.m(); ++id) {
        sums[g.edges[id].u] += labels[id];
        sums[g.edges[id].v] += labels[id];
    }
    return sums;
}

// Exact duplicate detection via sorted (sum, vertex) pairs; every colliding
// group is reported in full.
std::vector<std::vector<int>> duplicate_groups(const std::vector<int64_t>& sums) {
    std::vector<std::pair<int64_t, int>> order(sums.size());
    for (size_t v = 0; v < sums.size(); ++v) order[v] = {sums[v], static_cast<int>(v)};
    std::sort(order.begin(), order.end());
    std::vector<std::vector<int>> groups;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j < order.size() && order[j].first == order[i].first) ++j;
        if (j - i >= 2) {
            std::vector<int> group;
            for (size_t t = i; t < j; ++t) group.push_back(order[t].second);
            groups.push_back(std::move(group));
        }
        i = j;
    }
    return groups;
}

} // namespace

VerificationReport verify_antimagic(const Graph& g, const std::vector<int64_t>& labels) {
    if (static_cast<int>(labels.size()) != g.m())
        fail_precondition("verify_antimagic: labelling does not cover all edges");
    VerificationReport rep;
    std::vector<int64_t> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    rep.labels_injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    rep.label_range_ok = true;
    for (int i = 0; i < g.m(); ++i)
        if (sorted[i] != i + 1) rep.label_range_ok = false;
    rep.sums = induced_sums(g, labels, nullptr);
    rep.duplicate_sums = duplicate_groups(rep.sums);
    return rep;
}

VerificationReport verify_g_antimagic(const Graph& g, const std::vector<int64_t>& labels,
                                      const std::vector<int64_t>& base, int64_t modulus) {
    if (static_cast<int>(labels.size()) != g.m())
        fail_precondition("verify_g_antimagic: labelling does not cover all edges");
    if (static_cast<int>(base.size()) != g.n)
        fail_precondition("verify_g_antimagic: base size mismatch");
    VerificationReport rep;
    std::vector<int64_t> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    rep.labels_injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    rep.label_range_ok = true; // arbitrary label sets are allowed here
    rep.sums = induced_sums(g, labels, &base);
    rep.duplicate_sums = duplicate_groups(rep.sums);
    if (modulus > 0)
        for (int v = 0; v < g.n; ++v)
            if (rep.sums[v] % modulus == 0) rep.mod_violations.push_back(v);
    return rep;
}

bool counting_obstruction(const Graph& g) {
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) == 0)
            fail_precondition("counting_obstruction: isolated vertex present");
    int64_t m = g.m(), n = g.n;
    return m * (m + 1) < n * (n + 1) / 2;
}

BruteOutcome brute_force_antimagic(const Graph& g, uint64_t budget) {
    if (g.m() > 16) fail_precondition("brute_force_antimagic: more than 16 edges");
    BruteOutcome out;

    std::vector<int64_t> sums(g.n, 0);
    std::vector<int> remaining(g.n);
    std::unordered_map<int64_t, int> completed;
    for (int v = 0; v < g.n; ++v) {
        remaining[v] = g.degree(v);
        if (remaining[v] == 0) {
            if (++completed[0] >= 2) {
                out.result = BruteResult::none_exists; // two isolated vertices
                return out;
            }
        }
    }
    if (g.m() == 0) {
        out.result = g.n <= 1 ? BruteResult::found : BruteResult::none_exists;
        if (out.result == BruteResult::found) out.labels = {};
        return out;
    }

    std::vector<int> order(g.m());
    for (int i = 0; i < g.m(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        int dx = g.degree(g.edges[x].u) + g.degree(g.edges[x].v);
        int dy = g.degree(g.edges[y].u) + g.degree(g.edges[y].v);
        return dx != dy ? dx > dy : x < y;
    });

    std::vector<int64_t> assignment(g.m(), 0);
    uint64_t nodes = 0;
    bool out_of_budget = false;

    // DFS over label assignments in edge order; prune as soon as two vertices
    // with all incident edges labelled share a sum.
    std::function<bool(int, uint32_t)> dfs = [&](int depth, uint32_t used) -> bool {
        if (depth == g.m()) return true;
        int e = order[depth];
        const Edge& edge = g.edges[e];
        for (int64_t l = 1; l <= g.m(); ++l) {
            if (used & (1u << (l - 1))) continue;
            if (++nodes > budget) {
                out_of_budget = true;
                return false;
            }
            sums[edge.u] += l;
            sums[edge.v] += l;
            --remaining[edge.u];
            --remaining[edge.v];
            bool conflict = false;
            int completions[2];
            int n_completed = 0;
            for (int w : {edge.u, edge.v}) {
                if (remaining[w] != 0) continue;
                completions[n_completed++] = w;
                if (++completed[sums[w]] >= 2) {
                    conflict = true;
                    break;
                }
            }
            bool done = false;
            if (!conflict) {
                assignment[e] = l;
                done = dfs(depth + 1, used | (1u << (l - 1)));
            }
            if (!done) {
                for (int i = n_completed - 1; i >= 0; --i) {
                    int w = completions[i];
                    if (--completed[sums[w]] == 0) completed.erase(sums[w]);
                }
                ++remaining[edge.u];
                ++remaining[edge.v];
                sums[edge.u] -= l;
                sums[edge.v] -= l;
            }
            if (done) return true;
            if (out_of_budget) return false;
        }
        return false;
    };

    bool found = dfs(0, 0);
    out.nodes = nodes;
    if (found) {
        out.result = BruteResult::found;
        out.labels = assignment;
    } else {
        out.result = out_of_budget ? BruteResult::budget_exceeded : BruteResult::none_exists;
    }
    return out;
}

} // namespace antimagic
