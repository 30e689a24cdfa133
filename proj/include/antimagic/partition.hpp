#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "antimagic/graph.hpp"
#include "antimagic/rng.hpp"

namespace antimagic {

// r-core split: core = maximal set with internal min degree >= r.
struct CoreSplit {
    int r = 0;
    VertexSet core;
    VertexSet shell;
};

CoreSplit r_core(const Graph& g, int r);

// Upper bound for z(k,delta): min over p of the first-moment domination
// expression,
// clamped to 1. z_argmin returns the minimising p (unclamped).
double z_bound(int k, int delta);
double z_argmin(int k, int delta);

// Every vertex gets >= k neighbours inside the returned set. Randomized with
// the stated number of trials, smallest valid set kept.
VertexSet total_k_dominating_set(const Graph& g, int k, Rng rng, int trials = 32);

// Least a passing the bipartition threshold inequality for both a1, a2 with
// p_i = sqrt(a_i)/(sqrt(a1)+sqrt(a2)). Bisection, relative tolerance 1e-9.
double m_prime(double a1, double a2);
bool m_prime_eq_holds(double a, double a1, double a2);

// Random vertex bipartition with |E(U1)| >= r1 and |E(U2)| >= r2, vertices
// placed independently with p_i proportional to sqrt(r_i). Throws after
// max_trials failures.
std::pair<VertexSet, VertexSet> bipartition_edges(const Graph& g, int64_t r1, int64_t r2, Rng rng,
                                                  int max_trials = 64);

// Star forest with guaranteed leftover edges, plus the centre set V1 and
// the derived vertex classes.
struct StarForestPlan {
    std::vector<Star> stars;
    std::vector<int> star_edges; // E(F_S), sorted
    VertexSet v0;                // V minus V(F_S)
    VertexSet v1;                // chosen centres
    VertexSet v2;                // V(F_S) minus V1
    double achieved_z = 0.0;     // |D|/n for the dominating set actually used
};

StarForestPlan build_star_forest(const Graph& g, int delta, int64_t r, Rng rng);

// Full structural decomposition together with the five edge classes the
// labelling stages consume.
struct PartitionPlan {
    StarForestPlan stars;
    std::vector<int> forest_edges; // E(F), sorted; contains star_edges
    VertexSet u1, u2;              // partition of V0
    VertexSet u3;                  // V0 vertices whose V0-edges all lie in F
    std::array<std::vector<int>, 5> edge_class; // E1..E5
    std::vector<int8_t> class_of;               // per edge, 1..5
};

PartitionPlan build_partition(const Graph& g, int delta, int64_t r, int64_t r1, int64_t r2, Rng rng);

} // namespace antimagic
