#include "coocnet/index.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "coocnet/error.hpp"

namespace coocnet {

MetaField parse_meta_field(std::string_view name) {
  if (name == "discipline") return MetaField::kDiscipline;
  if (name == "category") return MetaField::kCategory;
  throw InvalidArgumentError("unknown metadata field \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------
// DocMask

DocMask::DocMask(std::size_t universe, bool full)
    : words_((universe + 63) / 64, full ? ~std::uint64_t{0} : 0),
      count_(full ? universe : 0),
      universe_(universe) {
  if (full && universe % 64 != 0) {
    words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  }
}

DocMask DocMask::from_set(std::size_t universe, const DocSet& docs) {
  DocMask mask(universe);
  for (DocId d : docs) mask.set(d);
  return mask;
}

void DocMask::set(DocId doc) {
  assert(doc < universe_);
  auto& w = words_[doc >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (doc & 63);
  if (!(w & bit)) {
    w |= bit;
    ++count_;
  }
}

DocMask DocMask::intersect(const DocMask& other) const {
  assert(universe_ == other.universe_);
  DocMask out;
  out.universe_ = universe_;
  out.words_.resize(words_.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] & other.words_[i];
    count += static_cast<std::size_t>(std::popcount(out.words_[i]));
  }
  out.count_ = count;
  return out;
}

std::size_t DocMask::intersect_count(const DocMask& other) const {
  assert(universe_ == other.universe_);
  std::size_t count = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    count += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return count;
}

DocSet DocMask::to_set() const {
  DocSet out;
  out.reserve(count_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<DocId>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction

InvertedIndex InvertedIndex::build(const Corpus& corpus, const TokenizerConfig& cfg) {
  const Tokenizer tokenizer(cfg);
  InvertedIndex index;
  std::unordered_map<std::string, std::vector<Posting>> lists;
  std::unordered_set<std::string> seen_ids;

  index.docs_.reserve(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const Document& doc = corpus[d];
    if (!seen_ids.insert(doc.doc_id).second) throw DuplicateIdError(doc.doc_id);
    const auto doc_no = static_cast<DocId>(d);

    // Terms in first-occurrence order with their positions.
    std::unordered_map<std::string_view, std::size_t> slot;
    std::vector<std::pair<std::string_view, std::vector<std::uint32_t>>> occurrences;
    const TokenStream stream = tokenizer(doc);
    for (const auto& tok : stream.tokens) {
      auto [it, fresh] = slot.try_emplace(tok.term, occurrences.size());
      if (fresh) occurrences.emplace_back(tok.term, std::vector<std::uint32_t>{});
      occurrences[it->second].second.push_back(tok.position);
    }
    for (auto& [term, positions] : occurrences) {
      const auto tf = static_cast<std::uint32_t>(positions.size());
      lists[std::string(term)].push_back(Posting{doc_no, tf, std::move(positions)});
    }
    index.docs_.push_back(DocMeta{doc.doc_id, doc.discipline, doc.category,
                                  static_cast<std::uint32_t>(occurrences.size())});
  }

  index.terms_.reserve(lists.size());
  for (const auto& entry : lists) index.terms_.push_back(entry.first);
  std::sort(index.terms_.begin(), index.terms_.end());
  index.postings_.reserve(index.terms_.size());
  for (const auto& term : index.terms_) index.postings_.push_back(std::move(lists[term]));

  index.finalize();
  return index;
}

InvertedIndex InvertedIndex::from_parts(std::vector<DocMeta> docs, std::vector<std::string> terms,
                                        std::vector<std::vector<Posting>> postings) {
  if (terms.size() != postings.size()) {
    throw InvalidArgumentError("term and posting-list counts differ");
  }
  std::unordered_set<std::string> ids;
  for (const auto& d : docs) {
    if (d.doc_id.empty()) throw InvalidArgumentError("empty doc_id");
    if (!ids.insert(d.doc_id).second) throw DuplicateIdError(d.doc_id);
  }
  std::vector<std::uint32_t> distinct(docs.size(), 0);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t > 0 && !(terms[t - 1] < terms[t])) throw InvalidArgumentError("lexicon not strictly sorted");
    if (postings[t].empty()) throw InvalidArgumentError("term \"" + terms[t] + "\" has no postings");
    for (std::size_t i = 0; i < postings[t].size(); ++i) {
      const Posting& p = postings[t][i];
      if (p.doc_id >= docs.size()) throw InvalidArgumentError("posting references unknown document");
      if (i > 0 && postings[t][i - 1].doc_id >= p.doc_id) {
        throw InvalidArgumentError("posting list not strictly ascending");
      }
      if (p.tf == 0 || p.tf != p.positions.size()) throw InvalidArgumentError("tf does not match positions");
      if (std::adjacent_find(p.positions.begin(), p.positions.end(), std::greater_equal<>()) !=
          p.positions.end()) {
        throw InvalidArgumentError("positions not strictly increasing");
      }
      ++distinct[p.doc_id];
    }
  }
  for (std::size_t d = 0; d < docs.size(); ++d) docs[d].distinct_terms = distinct[d];

  InvertedIndex index;
  index.docs_ = std::move(docs);
  index.terms_ = std::move(terms);
  index.postings_ = std::move(postings);
  index.finalize();
  return index;
}

void InvertedIndex::finalize() {
  const std::size_t n = docs_.size();
  term_lookup_.clear();
  term_lookup_.reserve(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) term_lookup_.emplace(terms_[t], static_cast<TermId>(t));
  doc_lookup_.clear();
  doc_lookup_.reserve(n);
  for (std::size_t d = 0; d < n; ++d) doc_lookup_.emplace(docs_[d].doc_id, static_cast<DocId>(d));

  forward_.assign(n, {});
  for (std::size_t d = 0; d < n; ++d) forward_[d].reserve(docs_[d].distinct_terms);
  total_distinct_ = 0;
  for (std::size_t t = 0; t < postings_.size(); ++t) {
    for (const auto& p : postings_[t]) forward_[p.doc_id].push_back(static_cast<TermId>(t));
    total_distinct_ += postings_[t].size();
  }

  by_df_.resize(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) by_df_[t] = static_cast<TermId>(t);
  std::stable_sort(by_df_.begin(), by_df_.end(),
                   [this](TermId a, TermId b) { return df(a) > df(b); });

  // A bitmap costs n/8 bytes against 4 bytes per posting; keep one for terms
  // where the bitmap is the smaller representation.
  dense_slot_.assign(terms_.size(), kNoDense);
  dense_.clear();
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    if (n > 0 && postings_[t].size() * 32 >= n) {
      DocMask mask(n);
      for (const auto& p : postings_[t]) mask.set(p.doc_id);
      dense_slot_[t] = static_cast<std::uint32_t>(dense_.size());
      dense_.push_back(std::move(mask));
    }
  }
}

// ---------------------------------------------------------------------------
// Lookup

std::optional<TermId> InvertedIndex::find_term(std::string_view term) const {
  auto it = term_lookup_.find(std::string(term));
  if (it == term_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<LexiconEntry> InvertedIndex::lexicon(std::string_view term) const {
  auto id = find_term(term);
  if (!id) return std::nullopt;
  return LexiconEntry{*id, df(*id)};
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  auto id = find_term(term);
  if (!id) return {};
  return postings_[*id];
}

std::optional<DocId> InvertedIndex::find_doc(std::string_view doc_id) const {
  auto it = doc_lookup_.find(std::string(doc_id));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Retrieval

DocSet InvertedIndex::match_docs(const FilterConditions& cond) const {
  auto meta_ok = [&](DocId d) {
    for (const auto& [field, value] : cond.meta_filters) {
      const auto& label = field == MetaField::kDiscipline ? docs_[d].discipline : docs_[d].category;
      if (label != value) return false;
    }
    return true;
  };

  DocSet result;
  if (cond.terms.empty()) {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      if (meta_ok(static_cast<DocId>(d))) result.push_back(static_cast<DocId>(d));
    }
    return result;
  }

  std::vector<TermId> ids;
  for (const auto& t : cond.terms) {
    auto id = find_term(t);
    if (!id) return {};
    ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end(), [this](TermId a, TermId b) { return df(a) < df(b); });

  for (const auto& p : postings_[ids.front()]) result.push_back(p.doc_id);
  for (std::size_t i = 1; i < ids.size() && !result.empty(); ++i) {
    const auto& list = postings_[ids[i]];
    auto cursor = list.begin();
    std::size_t kept = 0;
    for (DocId d : result) {
      cursor = std::lower_bound(cursor, list.end(), d,
                                [](const Posting& p, DocId v) { return p.doc_id < v; });
      if (cursor == list.end()) break;
      if (cursor->doc_id == d) result[kept++] = d;
    }
    result.resize(kept);
  }
  if (!cond.meta_filters.empty()) std::erase_if(result, [&](DocId d) { return !meta_ok(d); });
  return result;
}

DocMask InvertedIndex::match_mask(const FilterConditions& cond) const {
  if (cond.terms.empty() && cond.meta_filters.empty()) return all_docs();
  return DocMask::from_set(doc_count(), match_docs(cond));
}

DocMask InvertedIndex::intersect(const DocMask& docs, TermId term) const {
  if (has_dense(term)) return docs.intersect(dense_[dense_slot_[term]]);
  DocMask out(docs.universe());
  for (const auto& p : postings_[term]) {
    if (docs.test(p.doc_id)) out.set(p.doc_id);
  }
  return out;
}

std::size_t InvertedIndex::count_in(const DocMask& docs, TermId term) const {
  if (has_dense(term)) return docs.intersect_count(dense_[dense_slot_[term]]);
  std::size_t c = 0;
  for (const auto& p : postings_[term]) c += docs.test(p.doc_id) ? 1 : 0;
  return c;
}

std::size_t InvertedIndex::intersect_count(const DocMask& docs, TermId term) const {
  return count_in(docs, term);
}

// ---------------------------------------------------------------------------
// Aggregation

std::map<std::string, std::uint32_t> InvertedIndex::term_doc_frequencies(const DocSet& docs) const {
  std::vector<std::uint32_t> counts(terms_.size(), 0);
  DocMask seen(doc_count());
  for (DocId d : docs) {
    if (d >= doc_count()) throw UnknownDocError("unknown document number " + std::to_string(d));
    if (seen.test(d)) continue;
    seen.set(d);
    for (TermId t : forward_[d]) ++counts[t];
  }
  std::map<std::string, std::uint32_t> out;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] > 0) out.emplace(terms_[t], counts[t]);
  }
  return out;
}

namespace {

bool ranks_before(const TermIdCount& a, const TermIdCount& b) {
  return a.df != b.df ? a.df > b.df : a.term < b.term;
}

bool is_excluded(std::span<const TermId> exclude, TermId t) {
  return std::binary_search(exclude.begin(), exclude.end(), t);
}

}  // namespace

std::vector<TermCount> InvertedIndex::top_k_terms(const DocSet& docs, std::size_t k,
                                                  const std::set<std::string>& exclude,
                                                  std::uint32_t min_df) const {
  if (k == 0) throw InvalidArgumentError("k must be at least 1");
  for (DocId d : docs) {
    if (d >= doc_count()) throw UnknownDocError("unknown document number " + std::to_string(d));
  }
  std::vector<TermId> excluded;
  for (const auto& t : exclude) {
    if (auto id = find_term(t)) excluded.push_back(*id);
  }
  std::sort(excluded.begin(), excluded.end());

  std::vector<TermCount> out;
  for (const auto& tc : top_k_ids(DocMask::from_set(doc_count(), docs), k, excluded, min_df)) {
    out.push_back(TermCount{terms_[tc.term], tc.df});
  }
  return out;
}

std::vector<TermIdCount> InvertedIndex::top_k_ids_scan(const DocMask& docs, std::size_t k,
                                                       std::span<const TermId> exclude,
                                                       std::uint32_t min_df) const {
  const std::uint32_t floor = std::max<std::uint32_t>(min_df, 1);
  std::vector<std::uint32_t> counts(terms_.size(), 0);
  const auto words = docs.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint64_t w = words[i];
    while (w) {
      const auto d = i * 64 + static_cast<std::size_t>(std::countr_zero(w));
      for (TermId t : forward_[d]) ++counts[t];
      w &= w - 1;
    }
  }
  for (TermId t : exclude) {
    if (t < counts.size()) counts[t] = 0;
  }
  std::vector<TermIdCount> candidates;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] >= floor) candidates.push_back(TermIdCount{static_cast<TermId>(t), counts[t]});
  }
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), ranks_before);
  candidates.resize(keep);
  return candidates;
}

// Threshold scan over terms in global-df order: a term's df within `docs` is
// bounded by min(df, |docs|), so once that bound falls below the current k-th
// best no later term can enter the result. Falls back to the forward scan when
// the candidate work would exceed the cost of scanning `docs` directly.
std::vector<TermIdCount> InvertedIndex::top_k_ids(const DocMask& docs, std::size_t k,
                                                  std::span<const TermId> exclude,
                                                  std::uint32_t min_df) const {
  if (k == 0) throw InvalidArgumentError("k must be at least 1");
  const std::uint32_t floor = std::max<std::uint32_t>(min_df, 1);
  const std::size_t matched = docs.count();
  if (matched < floor) return {};

  const std::size_t words = docs.words().size();
  const std::size_t budget =
      docs_.empty() ? 0 : matched * total_distinct_ / docs_.size() + terms_.size();
  std::size_t spent = 0;

  std::vector<TermIdCount> best;  // sorted by ranks_before, size <= k
  best.reserve(k + 1);
  for (TermId t : by_df_) {
    const auto bound = static_cast<std::uint32_t>(std::min<std::size_t>(df(t), matched));
    if (bound < floor) break;
    if (best.size() == k && bound < best.back().df) break;
    if (is_excluded(exclude, t)) continue;

    spent += has_dense(t) ? words : postings_[t].size();
    if (spent > budget) return top_k_ids_scan(docs, k, exclude, min_df);

    const auto c = static_cast<std::uint32_t>(count_in(docs, t));
    if (c < floor) continue;
    const TermIdCount entry{t, c};
    if (best.size() == k && !ranks_before(entry, best.back())) continue;
    best.insert(std::upper_bound(best.begin(), best.end(), entry, ranks_before), entry);
    if (best.size() > k) best.pop_back();
  }
  return best;
}

std::vector<std::pair<std::uint32_t, std::size_t>> InvertedIndex::df_histogram() const {
  std::map<std::uint32_t, std::size_t> buckets;
  for (std::size_t t = 0; t < terms_.size(); ++t) ++buckets[df(static_cast<TermId>(t))];
  return {buckets.begin(), buckets.end()};
}

}  // namespace coocnet
