#pragma once

#include "coocnet/corpus.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/index.hpp"

namespace coocnet {

// Baseline construction: re-tokenize every document matching `cond` and count,
// for each unordered pair of distinct terms, the documents containing both.
// Each document contributes at most 1 to any pair. `corpus` must be the corpus
// the index was built from; a document of the index missing from it raises
// CorpusMismatchError.
CoocGraph build_traversal(const InvertedIndex& index, const Corpus& corpus,
                          const TokenizerConfig& cfg, const FilterConditions& cond);

}  // namespace coocnet
