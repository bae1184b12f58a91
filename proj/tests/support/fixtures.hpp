#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coocnet/corpus.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/index.hpp"

namespace coocnet::testing {

// D1:[a,b,c], D2:[a,b], D3:[b,c]
inline Corpus c3() {
  return {
      Document{"D1", "a b c", "", {}, "cs", "journal"},
      Document{"D2", "a b", "", {}, "cs", "conf"},
      Document{"D3", "b c", "", {}, "bio", "journal"},
  };
}

inline TokenizerConfig plain() { return TokenizerConfig{}; }

// Small random corpus over "t0".."t{vocab-1}" with repeated tokens and labels.
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_vocab) {
  std::uniform_int_distribution<std::size_t> nd(1, max_docs), nv(1, max_vocab), len(0, 12), lab(0, 2);
  const std::size_t n = nd(rng), vocab = nv(rng);
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  Corpus corpus;
  for (std::size_t i = 0; i < n; ++i) {
    Document d;
    d.doc_id = "R" + std::to_string(i);
    const std::size_t l = len(rng);
    for (std::size_t j = 0; j < l; ++j) {
      if (j) d.title += ' ';
      d.title += "t" + std::to_string(pick(rng));
    }
    d.discipline = "d" + std::to_string(lab(rng));
    d.category = "c" + std::to_string(lab(rng));
    corpus.push_back(std::move(d));
  }
  return corpus;
}

// Brute force helpers working straight off the corpus text.
inline std::set<std::string> doc_term_set(const Document& d, const TokenizerConfig& cfg) {
  std::set<std::string> out;
  for (const auto& t : tokenize(d, cfg).tokens) out.insert(t.term);
  return out;
}

inline bool scan_matches(const Document& d, const TokenizerConfig& cfg, const FilterConditions& cond) {
  const auto terms = doc_term_set(d, cfg);
  for (const auto& t : cond.terms) {
    if (!terms.contains(t)) return false;
  }
  for (const auto& [field, value] : cond.meta_filters) {
    const auto& label = field == MetaField::kDiscipline ? d.discipline : d.category;
    if (label != value) return false;
  }
  return true;
}

// Pair weights from posting doc sets restricted to the matched documents.
inline std::map<std::pair<std::string, std::string>, std::uint64_t> pair_oracle(
    const InvertedIndex& index, const DocSet& matched) {
  const std::set<DocId> allowed(matched.begin(), matched.end());
  std::vector<std::pair<std::string, std::set<DocId>>> lists;
  for (const auto& term : index.terms()) {
    std::set<DocId> docs;
    for (const auto& p : index.postings(std::string_view(term))) {
      if (allowed.contains(p.doc_id)) docs.insert(p.doc_id);
    }
    if (!docs.empty()) lists.emplace_back(term, std::move(docs));
  }
  std::map<std::pair<std::string, std::string>, std::uint64_t> out;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::size_t j = i + 1; j < lists.size(); ++j) {
      std::uint64_t both = 0;
      for (DocId d : lists[i].second) both += lists[j].second.count(d);
      if (both) out[{lists[i].first, lists[j].first}] = both;
    }
  }
  return out;
}

inline std::map<std::pair<std::string, std::string>, std::uint64_t> edge_map(const CoocGraph& g) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> out;
  for (const auto& e : g.edges()) out[{e.source, e.target}] = e.weight;
  return out;
}

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("coocnet-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace coocnet::testing
