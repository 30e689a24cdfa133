#pragma once

#include <cstdint>
#include <vector>

#include "antimagic/graph.hpp"

namespace antimagic {

// Edge colouring/labelling of a subset of edges, with a vertex potential and
// cached partial sums s(v) = base(v) + sum of labels on labelled edges at v.
class PartialLabelling {
  public:
    static constexpr int64_t kUnlabelled = INT64_MIN;

    explicit PartialLabelling(const Graph& g);
    PartialLabelling(const Graph& g, std::vector<int64_t> base);

    const Graph& graph() const { return *g_; }
    bool has(int e) const { return label_[e] != kUnlabelled; }
    int64_t label(int e) const { return label_[e]; }
    void set(int e, int64_t value); // insert or overwrite
    int64_t sum(int v) const { return sum_[v]; }
    int64_t base(int v) const { return base_[v]; }
    int labelled_count() const { return labelled_; }
    bool total() const { return labelled_ == g_->m(); }
    const std::vector<int64_t>& raw_labels() const { return label_; }

    // Recompute-from-scratch sum; the class invariant is sum(v) == slow_sum(v).
    int64_t slow_sum(int v) const;

  private:
    const Graph* g_;
    std::vector<int64_t> label_;
    std::vector<int64_t> base_;
    std::vector<int64_t> sum_;
    int labelled_ = 0;
};

// n_{(G,f,g,S,k)}(i): how many vertices of S have partial sum congruent to i.
struct ResidueHistogram {
    int64_t modulus = 1;
    std::vector<int64_t> counts;

    int64_t total() const;
};

ResidueHistogram residue_histogram(const PartialLabelling& p, const VertexSet& s, int64_t k);

inline int64_t mod_floor(int64_t a, int64_t k) {
    int64_t r = a % k;
    return r < 0 ? r + k : r;
}

// Edge colouring with colours {1,2} such that every vertex lies in at least k
// edges of each colour. Requires min degree >= 2k+1.
std::vector<int> equitable_two_colouring(const Graph& g, int k);

// Graph of isolated edges: colours in {0..k-1} such that no matched vertex
// has sum 0 or 1 mod k, and every other residue is hit at most
// |V_matched|/(k-3) + k + 1 times. k odd, k >= 5.
PartialLabelling colour_isolated_edges(const Graph& g, const std::vector<int64_t>& base, int64_t k);

// General graph without isolated vertices: sums over S avoid {0,1} mod k and
// each residue 2..k-1 is hit at most |S|/(k-3) + k + 2 times. k odd, k >= 5.
PartialLabelling colour_mod_k(const Graph& g, const std::vector<int64_t>& base, const VertexSet& s,
                              int64_t k);

// Bijective labelling onto `labels` controlling sums over V1 mod k1 and over
// V2 mod k2 simultaneously (k1, k2 coprime odd, both >= 5). phase1_out, when
// given, receives the labelling after the first swap phase (the second phase
// never changes a label modulo k1).
PartialLabelling label_two_moduli(const Graph& g, const std::vector<int64_t>& base,
                                  const VertexSet& v1, const VertexSet& v2, int64_t k1, int64_t k2,
                                  const std::vector<int64_t>& labels,
                                  std::vector<int64_t>* phase1_out = nullptr);

// Injective labelling giving each a in A the exact sum t(a) mod k1k2, while
// sums over Bp avoid {0,1} mod k1 with residue counts at most
// |Bp|/(k1-4) + 2k1 - 3. k1 >= 5; k2 >= 1 (only the product k1k2 matters).
PartialLabelling colour_AB(const Graph& g, const std::vector<int64_t>& base, const VertexSet& a,
                           const VertexSet& b, const VertexSet& bp,
                           const std::vector<int64_t>& targets, int64_t k1, int64_t k2,
                           const std::vector<int64_t>& labels);

// Colours E_G(V0,V) with {0..k-1} so every v in V0 has sum divisible by k;
// each colour is used at most |E_G(V0,V)|/k + |V0| times. k odd. Returns a
// per-edge colour vector with -1 outside the domain.
std::vector<int> colour_boundary_divisible(const Graph& g, const VertexSet& v0, const VertexSet& v1,
                                           int64_t k);

// Integer interval of labels, inclusive.
struct Interval {
    int64_t lo = 0;
    int64_t hi = -1;

    int64_t size() const { return hi < lo ? 0 : hi - lo + 1; }
    bool contains(int64_t x) const { return x >= lo && x <= hi; }
};

// Labels E_G(V0,V) injectively from the interval so that sums at V0 vertices
// are divisible by k and pairwise distinct, where V1 is the delta-core and
// V0 its complement. Requires no isolated edge, at most one isolated vertex,
// and |L| >= (delta-1+3k)|V0|.
PartialLabelling label_boundary(const Graph& g, int delta, int64_t k, Interval labels);

} // namespace antimagic
