#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "antimagic/graph.hpp"
#include "antimagic/labelling.hpp"
#include "antimagic/partition.hpp"

namespace antimagic {

struct PipelineConfig {
    int64_t k1 = 13;
    int64_t k2 = 11;
    uint64_t seed = 0;
    bool skip_delta_check = false; // run below the proven threshold, failures reported
    int bipartition_trials = 64;
    int dominating_trials = 32;
};

void validate_config(const PipelineConfig& cfg);

// c = 2k1k2+k2; delta = least solution of the E4 feasibility inequality;
// d0 = 2 max(c, delta-1+3k1k2).
struct Constants {
    int64_t c = 0;
    int delta = 0;
    int64_t d0 = 0;
};

Constants constants(int64_t k1, int64_t k2);

// r1, r2 and the edge floor r handed to the partition builder.
struct PartitionDims {
    int64_t r1 = 0;
    int64_t r2 = 0;
    int64_t r = 0;
};

PartitionDims choose_partition_dims(int n, int64_t k1, int64_t k2);

// The staged label pools. All pools are sorted ascending; m_elem is the
// CRT element of {0..k1k2-1} that is 0 mod k1 and 1 mod k2.
struct LabelPools {
    int64_t k1 = 0, k2 = 0;
    int64_t m_elem = 0;
    std::vector<int64_t> l1, l2, l3, l4, lt;
};

LabelPools plan_label_pools(const Graph& g, const PartitionPlan& plan,
                            const std::vector<int64_t>& labels, const PipelineConfig& cfg);

// Mutable state threaded through the five stages; exposed so tests can drive
// and inspect each stage separately.
struct PipelineState {
    const Graph* g = nullptr;
    const PartitionPlan* plan = nullptr;
    PipelineConfig cfg;
    int64_t m_elem = 0;
    PartialLabelling lab;
    // unconsumed labels per pool, sorted ascending
    std::vector<int64_t> l1_free, l2_free, l3_free, l4_free, lt_free;

    PipelineState(const Graph& graph, const PartitionPlan& p, const LabelPools& pools,
                  const std::vector<int64_t>& base, const PipelineConfig& config);
};

void stage_e1(PipelineState& st);
void stage_e2(PipelineState& st);
void stage_e3(PipelineState& st);
void stage_e4(PipelineState& st);
void stage_e5(PipelineState& st);

// Bijective star labelling with pairwise distinct centre sums.
// Returns (edge id, label) pairs; current_sums supplies the g-values.
std::vector<std::pair<int, int64_t>> label_stars(const Graph& g, const std::vector<Star>& stars,
                                                 const std::vector<int64_t>& labels,
                                                 const std::vector<int64_t>& current_sums);

// Minimum-degree pipeline: bijective g-antimagic labelling onto
// `labels` with no vertex sum divisible by k1k2. Requires min degree >=
// constants(k1,k2).delta and {1,...,c n} within the label set.
PartialLabelling label_min_degree(const Graph& g, const std::vector<int64_t>& labels,
                                  const std::vector<int64_t>& base, const PipelineConfig& cfg);

// Top level: antimagic labelling onto [1,|E|] for graphs of average
// degree >= d0 with no isolated edge and at most one isolated vertex.
PartialLabelling label_graph(const Graph& g, const PipelineConfig& cfg);

} // namespace antimagic
