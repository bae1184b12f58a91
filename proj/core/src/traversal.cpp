#include "coocnet/traversal.hpp"

#include <algorithm>

#include "coocnet/error.hpp"

namespace coocnet {

namespace {

// Maps index document numbers to corpus records. The common case is the same
// corpus in the same order; otherwise fall back to lookup by doc_id.
class CorpusView {
 public:
  CorpusView(const InvertedIndex& index, const Corpus& corpus) : index_(index), corpus_(corpus) {}

  const Document& at(DocId d) {
    const auto& wanted = index_.doc(d).doc_id;
    if (d < corpus_.size() && corpus_[d].doc_id == wanted) return corpus_[d];
    if (by_id_.empty()) {
      for (std::size_t i = 0; i < corpus_.size(); ++i) by_id_.emplace(corpus_[i].doc_id, i);
    }
    auto it = by_id_.find(wanted);
    if (it == by_id_.end()) {
      throw CorpusMismatchError("document \"" + wanted + "\" is in the index but not in the corpus");
    }
    return corpus_[it->second];
  }

 private:
  const InvertedIndex& index_;
  const Corpus& corpus_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

}  // namespace

CoocGraph build_traversal(const InvertedIndex& index, const Corpus& corpus,
                          const TokenizerConfig& cfg, const FilterConditions& cond) {
  const DocSet matched = index.match_docs(cond);
  const Tokenizer tokenizer(cfg);
  CorpusView view(index, corpus);

  CoocGraph graph;
  std::vector<CoocGraph::NodeId> terms;
  for (DocId d : matched) {
    const TokenStream stream = tokenizer(view.at(d));
    terms.clear();
    for (const auto& tok : stream.tokens) terms.push_back(graph.add_node(tok.term));
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        graph.merge_edge(terms[i], terms[j], 1, MergePolicy::kSum);
      }
    }
  }
  return graph;
}

}  // namespace coocnet
