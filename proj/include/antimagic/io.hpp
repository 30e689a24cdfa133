#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "antimagic/graph.hpp"

namespace antimagic {

// Canonical text format: first line "n m", then m lines "u v" (0-based).
// Lines starting with '#' are comments.
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);
std::string format_edge_list(const Graph& g);

// Synthetic generators, deterministic for (spec, seed).
// Specs: gnp(n,p), min_degree(n,delta), matching(k), stars(s1,s2,...),
// cycle(n), complete(n).
Graph generate(const std::string& spec, uint64_t seed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace antimagic
