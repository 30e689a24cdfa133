#pragma once

#include <cstdint>
#include <vector>

#include "antimagic/graph.hpp"

namespace antimagic {

// Exact verification result. duplicate_sums lists each colliding sum as the
// full group of vertices sharing it.
struct VerificationReport {
    bool labels_injective = false;
    bool label_range_ok = false; // labels exactly {1,...,|E|} (antimagic mode)
    std::vector<std::vector<int>> duplicate_sums;
    std::vector<int> mod_violations; // vertices with sum divisible by the modulus
    std::vector<int64_t> sums;

    bool ok() const {
        return labels_injective && label_range_ok && duplicate_sums.empty() &&
               mod_violations.empty();
    }
};

// Classical antimagic check: labels must be a bijection onto {1,...,|E|} and
// the induced vertex sums pairwise distinct.
VerificationReport verify_antimagic(const Graph& g, const std::vector<int64_t>& labels);

// g-antimagic check against a vertex potential: labels pairwise distinct
// (any label set), sums s(v) = base(v) + incident labels pairwise distinct,
// and no sum divisible by `modulus` (pass 0 to skip the divisibility check).
VerificationReport verify_g_antimagic(const Graph& g, const std::vector<int64_t>& labels,
                                      const std::vector<int64_t>& base, int64_t modulus);

// |E|(|E|+1) < |V|(|V|+1)/2 forces duplicate sums. Requires no isolated
// vertices.
bool counting_obstruction(const Graph& g);

enum class BruteResult { found, none_exists, budget_exceeded };

struct BruteOutcome {
    BruteResult result = BruteResult::none_exists;
    std::vector<int64_t> labels; // valid when result == found
    uint64_t nodes = 0;          // search nodes visited
};

// Exhaustive permutation search with pruning on completed-vertex collisions.
// Edge order: descending endpoint degree sum. Exhaustive when the budget
// allows; otherwise reports budget_exceeded (distinct from none_exists).
BruteOutcome brute_force_antimagic(const Graph& g, uint64_t budget = 100'000'000ULL);

} // namespace antimagic
