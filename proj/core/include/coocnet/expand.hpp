#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coocnet/graph.hpp"
#include "coocnet/index.hpp"

namespace coocnet {

inline constexpr std::uint32_t kDefaultMinDf = 1;

struct ExpandParams {
  std::uint32_t depth = 1;   // expansion levels
  std::uint32_t branch = 1;  // high-frequency words taken per condition set
  std::uint32_t min_df = kDefaultMinDf;
};

// One expanded condition set, for instrumentation.
struct ExpansionRecord {
  std::vector<std::string> conditions;  // sorted
  std::string anchor;
  std::uint32_t level = 0;
  std::size_t edges_emitted = 0;
};

struct ExpandTrace {
  std::vector<ExpansionRecord> expansions;
};

// Both builders share one result contract. Starting from the seed conditions,
// each condition set S (reached through last-added term `anchor`) takes the
// top `branch` terms w of match_docs(S), records edge (anchor, w) with weight
// |match_docs(S ∪ {w})| under max-merge, and is extended to S ∪ {w} until
// `depth` levels have been expanded. A condition set is expanded at most once.
// The level-1 anchor is the lexicographically last seed term. Seed terms are
// always graph nodes; an absent seed term yields a graph without edges.
//
// Throws InvalidArgumentError for empty seed terms or depth/branch of 0.
CoocGraph build_recursive(const InvertedIndex& index, const FilterConditions& seed,
                          const ExpandParams& params, ExpandTrace* trace = nullptr);

// Level-by-level variant with an explicit frontier; identical output to
// build_recursive.
CoocGraph build_bfs(const InvertedIndex& index, const FilterConditions& seed,
                    const ExpandParams& params, ExpandTrace* trace = nullptr);

}  // namespace coocnet
