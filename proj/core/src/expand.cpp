#include "coocnet/expand.hpp"

#include <algorithm>
#include <set>

#include "coocnet/error.hpp"

namespace coocnet {

namespace {

using TermSet = std::vector<TermId>;  // sorted

TermSet with_term(const TermSet& cond, TermId t) {
  TermSet out;
  out.reserve(cond.size() + 1);
  auto pos = std::lower_bound(cond.begin(), cond.end(), t);
  out.insert(out.end(), cond.begin(), pos);
  out.push_back(t);
  out.insert(out.end(), pos, cond.end());
  return out;
}

// State shared by both traversal orders: the graph under construction, the
// visited condition sets, and the per-set expansion step.
class Expansion {
 public:
  Expansion(const InvertedIndex& index, const FilterConditions& seed, const ExpandParams& params,
            ExpandTrace* trace)
      : index_(index), params_(params), trace_(trace) {
    if (seed.terms.empty()) throw InvalidArgumentError("expansion needs at least one seed term");
    if (params.depth == 0) throw InvalidArgumentError("depth must be at least 1");
    if (params.branch == 0) throw InvalidArgumentError("branch must be at least 1");

    for (const auto& t : seed.terms) graph_.add_node(t);
    for (const auto& t : seed.terms) {
      auto id = index.find_term(t);
      if (!id) return;
      seed_terms_.push_back(*id);
    }
    std::sort(seed_terms_.begin(), seed_terms_.end());
    seed_docs_ = index.match_mask(seed);
    ready_ = true;
  }

  // False when a seed term is absent from the lexicon: nothing to expand.
  bool ready() const { return ready_; }
  const TermSet& seed_terms() const { return seed_terms_; }
  TermId seed_anchor() const { return seed_terms_.back(); }
  const DocMask& seed_docs() const { return seed_docs_; }
  std::uint32_t depth() const { return params_.depth; }
  const InvertedIndex& index() const { return index_; }

  bool mark_visited(const TermSet& cond) { return visited_.insert(cond).second; }

  std::vector<TermIdCount> expand(const TermSet& cond, TermId anchor, const DocMask& docs,
                                  std::uint32_t level) {
    auto top = index_.top_k_ids(docs, params_.branch, cond, params_.min_df);
    const auto from = node(anchor);
    for (const auto& w : top) graph_.merge_edge(from, node(w.term), w.df, MergePolicy::kMax);
    if (trace_) {
      ExpansionRecord rec;
      for (TermId t : cond) rec.conditions.push_back(index_.term(t));
      rec.anchor = index_.term(anchor);
      rec.level = level;
      rec.edges_emitted = top.size();
      trace_->expansions.push_back(std::move(rec));
    }
    return top;
  }

  CoocGraph take() { return std::move(graph_); }

 private:
  CoocGraph::NodeId node(TermId t) {
    auto [it, fresh] = nodes_.try_emplace(t, 0);
    if (fresh) it->second = graph_.add_node(index_.term(t));
    return it->second;
  }

  const InvertedIndex& index_;
  ExpandParams params_;
  ExpandTrace* trace_;
  CoocGraph graph_;
  std::unordered_map<TermId, CoocGraph::NodeId> nodes_;
  std::set<TermSet> visited_;
  TermSet seed_terms_;
  DocMask seed_docs_;
  bool ready_ = false;
};

void expand_depth_first(Expansion& ex, const TermSet& cond, TermId anchor, const DocMask& docs,
                        std::uint32_t level) {
  const auto words = ex.expand(cond, anchor, docs, level);
  if (level == ex.depth()) return;
  for (const auto& w : words) {
    TermSet next = with_term(cond, w.term);
    if (!ex.mark_visited(next)) continue;
    expand_depth_first(ex, next, w.term, ex.index().intersect(docs, w.term), level + 1);
  }
}

struct Frame {
  TermSet cond;
  TermId anchor;
  DocMask docs;
};

}  // namespace

CoocGraph build_recursive(const InvertedIndex& index, const FilterConditions& seed,
                          const ExpandParams& params, ExpandTrace* trace) {
  Expansion ex(index, seed, params, trace);
  if (!ex.ready()) return ex.take();
  ex.mark_visited(ex.seed_terms());
  expand_depth_first(ex, ex.seed_terms(), ex.seed_anchor(), ex.seed_docs(), 1);
  return ex.take();
}

CoocGraph build_bfs(const InvertedIndex& index, const FilterConditions& seed,
                    const ExpandParams& params, ExpandTrace* trace) {
  Expansion ex(index, seed, params, trace);
  if (!ex.ready()) return ex.take();
  ex.mark_visited(ex.seed_terms());

  std::vector<Frame> frontier;
  frontier.push_back(Frame{ex.seed_terms(), ex.seed_anchor(), ex.seed_docs()});
  std::vector<Frame> next;
  for (std::uint32_t level = 1; level <= params.depth && !frontier.empty(); ++level) {
    next.clear();
    for (const auto& frame : frontier) {
      const auto words = ex.expand(frame.cond, frame.anchor, frame.docs, level);
      if (level == params.depth) continue;
      for (const auto& w : words) {
        TermSet cond = with_term(frame.cond, w.term);
        if (!ex.mark_visited(cond)) continue;
        next.push_back(Frame{std::move(cond), w.term, index.intersect(frame.docs, w.term)});
      }
    }
    std::swap(frontier, next);
  }
  return ex.take();
}

}  // namespace coocnet
