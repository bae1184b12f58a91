#include <gtest/gtest.h>

#include <random>

#include "coocnet/error.hpp"
#include "coocnet/traversal.hpp"
#include "fixtures.hpp"

namespace coocnet {
namespace {

using EdgeMap = std::map<std::pair<std::string, std::string>, std::uint64_t>;

CoocGraph c3_with(FilterConditions cond) {
  const auto corpus = testing::c3();
  return build_traversal(InvertedIndex::build(corpus, {}), corpus, {}, cond);
}

TEST(Traversal, C3Examples) {
  EXPECT_EQ(testing::edge_map(c3_with({})), (EdgeMap{{{"a", "b"}, 2}, {{"a", "c"}, 1}, {{"b", "c"}, 2}}));
  FilterConditions a;
  a.terms = {"a"};
  EXPECT_EQ(testing::edge_map(c3_with(a)), (EdgeMap{{{"a", "b"}, 2}, {{"a", "c"}, 1}, {{"b", "c"}, 1}}));
  FilterConditions z;
  z.terms = {"zzz"};
  const auto g = c3_with(z);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.node_count(), 0u);
}

TEST(Traversal, RepeatedTokensCountOncePerDocument) {
  const Corpus corpus{Document{"D1", "u u v u", "", {"v"}, "", ""}};
  const auto g = build_traversal(InvertedIndex::build(corpus, {}), corpus, {}, {});
  EXPECT_EQ(g.weight("u", "v"), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Traversal, CorpusLookupIgnoresOrderButNotMissingDocs) {
  auto corpus = testing::c3();
  const auto index = InvertedIndex::build(corpus, {});
  auto reversed = Corpus(corpus.rbegin(), corpus.rend());
  EXPECT_EQ(build_traversal(index, reversed, {}, {}), build_traversal(index, corpus, {}, {}));
  corpus.pop_back();
  EXPECT_THROW(build_traversal(index, corpus, {}, {}), CorpusMismatchError);
}

TEST(TraversalProperty, MatchesPostingIntersectionOracle) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> pick(0, 29), nterms(0, 2), lab(0, 5);
  for (int round = 0; round < 150; ++round) {
    const auto corpus = testing::random_corpus(rng, 100, 30);
    const auto index = InvertedIndex::build(corpus, {});
    FilterConditions cond;
    for (int i = nterms(rng); i > 0; --i) cond.terms.insert("t" + std::to_string(pick(rng)));
    if (lab(rng) == 0) cond.meta_filters[MetaField::kCategory] = "c1";

    const auto matched = index.match_docs(cond);
    const auto g = build_traversal(index, corpus, {}, cond);
    ASSERT_EQ(testing::edge_map(g), testing::pair_oracle(index, matched));

    const auto freq = index.term_doc_frequencies(matched);
    for (const auto& e : g.edges()) {
      EXPECT_LE(e.weight, std::min(freq.at(e.source), freq.at(e.target)));
    }
  }
}

}  // namespace
}  // namespace coocnet
