#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coocnet/corpus.hpp"

namespace coocnet {

using TermId = std::uint32_t;
// Documents are numbered in corpus order.
using DocId = std::uint32_t;

struct Posting {
  DocId doc_id = 0;
  std::uint32_t tf = 0;
  std::vector<std::uint32_t> positions;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct LexiconEntry {
  TermId id = 0;
  std::uint32_t df = 0;
};

struct DocMeta {
  std::string doc_id;
  std::string discipline;
  std::string category;
  std::uint32_t distinct_terms = 0;

  friend bool operator==(const DocMeta&, const DocMeta&) = default;
};

enum class MetaField { kDiscipline, kCategory };

MetaField parse_meta_field(std::string_view name);

// Conjunctive query: every term must occur and every metadata label must
// match. Empty conditions match all documents.
struct FilterConditions {
  std::set<std::string> terms;
  std::map<MetaField, std::string> meta_filters;
};

// Sorted, duplicate-free list of document numbers.
using DocSet = std::vector<DocId>;

// Fixed-universe document bitmap with a cached population count.
class DocMask {
 public:
  DocMask() = default;
  explicit DocMask(std::size_t universe, bool full = false);

  static DocMask from_set(std::size_t universe, const DocSet& docs);

  void set(DocId doc);
  bool test(DocId doc) const {
    return (words_[doc >> 6] >> (doc & 63)) & 1u;
  }
  std::size_t count() const { return count_; }
  std::size_t universe() const { return universe_; }
  std::span<const std::uint64_t> words() const { return words_; }

  DocMask intersect(const DocMask& other) const;
  // Size of the intersection without materializing it.
  std::size_t intersect_count(const DocMask& other) const;
  DocSet to_set() const;

  friend bool operator==(const DocMask& a, const DocMask& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
  std::size_t universe_ = 0;
};

struct TermCount {
  std::string term;
  std::uint32_t df = 0;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

struct TermIdCount {
  TermId term = 0;
  std::uint32_t df = 0;

  friend bool operator==(const TermIdCount&, const TermIdCount&) = default;
};

// Lexicon plus per-term posting lists. Term ids follow lexicographic term
// order, so ordering by id is ordering by term. Immutable once built; all
// queries are const and safe to run concurrently.
class InvertedIndex {
 public:
  InvertedIndex() = default;

  static InvertedIndex build(const Corpus& corpus, const TokenizerConfig& cfg);

  // Assembles an index from its stored parts (used by snapshot loading).
  // Validates ordering and df/tf consistency.
  static InvertedIndex from_parts(std::vector<DocMeta> docs, std::vector<std::string> terms,
                                  std::vector<std::vector<Posting>> postings);

  std::size_t doc_count() const { return docs_.size(); }
  std::size_t term_count() const { return terms_.size(); }

  std::optional<TermId> find_term(std::string_view term) const;
  std::optional<LexiconEntry> lexicon(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_[id]; }
  std::uint32_t df(TermId id) const { return static_cast<std::uint32_t>(postings_[id].size()); }
  std::span<const std::string> terms() const { return terms_; }

  std::span<const Posting> postings(TermId id) const { return postings_[id]; }
  // Empty when the term is absent.
  std::span<const Posting> postings(std::string_view term) const;

  const DocMeta& doc(DocId id) const { return docs_[id]; }
  std::span<const DocMeta> docs() const { return docs_; }
  std::optional<DocId> find_doc(std::string_view doc_id) const;
  // Distinct term ids of a document, ascending.
  std::span<const TermId> doc_terms(DocId id) const { return forward_[id]; }

  // Posting-list intersection, smallest list first.
  DocSet match_docs(const FilterConditions& cond) const;
  DocMask match_mask(const FilterConditions& cond) const;
  DocMask all_docs() const { return DocMask(doc_count(), true); }
  // docs ∩ postings(term)
  DocMask intersect(const DocMask& docs, TermId term) const;
  std::size_t intersect_count(const DocMask& docs, TermId term) const;

  // Throws UnknownDocError for ids outside the index.
  std::map<std::string, std::uint32_t> term_doc_frequencies(const DocSet& docs) const;

  // Highest document-frequency terms over `docs`, ordered by (df desc, term
  // asc). Terms below max(min_df, 1) are dropped.
  std::vector<TermCount> top_k_terms(const DocSet& docs, std::size_t k,
                                     const std::set<std::string>& exclude,
                                     std::uint32_t min_df = 1) const;
  // Id-level variant used by the expansion builders. `exclude` must be sorted.
  std::vector<TermIdCount> top_k_ids(const DocMask& docs, std::size_t k,
                                     std::span<const TermId> exclude,
                                     std::uint32_t min_df = 1) const;
  // Reference aggregation: one pass over the forward lists of `docs`.
  std::vector<TermIdCount> top_k_ids_scan(const DocMask& docs, std::size_t k,
                                          std::span<const TermId> exclude,
                                          std::uint32_t min_df = 1) const;

  // (df, number of terms with that df), df ascending.
  std::vector<std::pair<std::uint32_t, std::size_t>> df_histogram() const;

  friend bool operator==(const InvertedIndex& a, const InvertedIndex& b) {
    return a.docs_ == b.docs_ && a.terms_ == b.terms_ && a.postings_ == b.postings_;
  }

 private:
  void finalize();
  bool has_dense(TermId id) const { return dense_slot_[id] != kNoDense; }
  std::size_t count_in(const DocMask& docs, TermId id) const;

  static constexpr std::uint32_t kNoDense = ~std::uint32_t{0};

  std::vector<DocMeta> docs_;
  std::vector<std::string> terms_;
  std::vector<std::vector<Posting>> postings_;

  // Derived in finalize().
  std::unordered_map<std::string, TermId> term_lookup_;
  std::unordered_map<std::string, DocId> doc_lookup_;
  std::vector<std::vector<TermId>> forward_;
  std::vector<TermId> by_df_;  // (df desc, id asc)
  std::vector<std::uint32_t> dense_slot_;
  std::vector<DocMask> dense_;
  std::size_t total_distinct_ = 0;
};

// Binary snapshot: magic "COOCIDX1", format version, length-prefixed body,
// trailing FNV-1a 64 checksum over everything before it.
void save_snapshot(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load_snapshot(const std::filesystem::path& path);

std::string encode_snapshot(const InvertedIndex& index);
InvertedIndex decode_snapshot(std::string_view bytes);

}  // namespace coocnet
