#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "coocnet/error.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/traversal.hpp"
#include "fixtures.hpp"

namespace coocnet {
namespace {

CoocGraph c3_full() {
  const auto corpus = testing::c3();
  return build_traversal(InvertedIndex::build(corpus, {}), corpus, {}, {});
}

TEST(MergeEdge, CanonicalizesAndMerges) {
  CoocGraph g;
  g.merge_edge("b", "a", 2, MergePolicy::kMax);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{"a", "b", 2}}));
  g.merge_edge("a", "b", 1, MergePolicy::kMax);
  EXPECT_EQ(g.weight("a", "b"), 2u);
  g.merge_edge("a", "b", 1, MergePolicy::kSum);
  EXPECT_EQ(g.weight("b", "a"), 3u);
  EXPECT_EQ(g.nodes(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(g.weight("a", "zzz"), 0u);
}

TEST(MergeEdge, RejectsSelfLoopAndZeroWeight) {
  CoocGraph g;
  EXPECT_THROW(g.merge_edge("a", "a", 1, MergePolicy::kSum), InvalidArgumentError);
  EXPECT_THROW(g.merge_edge("a", "b", 0, MergePolicy::kSum), InvalidArgumentError);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(TopEdges, Examples) {
  const auto g = c3_full();
  EXPECT_EQ(g.top_edges(1), (std::vector<Edge>{{"a", "b", 2}}));
  EXPECT_EQ(g.top_edges(10), (std::vector<Edge>{{"a", "b", 2}, {"b", "c", 2}, {"a", "c", 1}}));
  EXPECT_TRUE(CoocGraph{}.top_edges(5).empty());
}

TEST(Render, EdgeCsv) {
  EXPECT_EQ(render_graph(c3_full(), 2, GraphFormat::kEdgeCsv), "source,target,weight\na,b,2\nb,c,2\n");
  EXPECT_EQ(render_graph(CoocGraph{}, 5, GraphFormat::kEdgeCsv), "source,target,weight\n");
}

TEST(Render, GraphJsonRestrictsNodesToExportedEdgesAndIsolated) {
  auto g = c3_full();
  g.add_node("zzz");
  EXPECT_EQ(render_graph(g, 1, GraphFormat::kGraphJson),
            R"({"nodes":["a","b","zzz"],"edges":[{"source":"a","target":"b","weight":2}]})" "\n");
  CoocGraph lone;
  lone.add_node("zzz");
  EXPECT_EQ(render_graph(lone, 3, GraphFormat::kGraphJson), R"({"nodes":["zzz"],"edges":[]})" "\n");
}

TEST(Render, ParseRoundTrip) {
  CoocGraph g;
  g.merge_edge("x,y", "say \"hi\"", 4, MergePolicy::kSum);
  g.merge_edge("data mining", "b", 1, MergePolicy::kSum);
  for (auto fmt : {GraphFormat::kEdgeCsv, GraphFormat::kGraphJson}) {
    EXPECT_EQ(parse_graph(render_graph(g, 100, fmt)), g);
  }
  EXPECT_THROW(parse_graph("a,b,c\n"), FormatError);
  EXPECT_THROW(parse_graph("source,target,weight\na,b,-1\n"), FormatError);
  EXPECT_THROW(parse_graph("{\"nodes\":5}"), FormatError);
}

TEST(Export, WritesAndImportsFile) {
  testing::TempDir dir;
  export_graph(c3_full(), 10, GraphFormat::kEdgeCsv, dir / "g.csv");
  EXPECT_EQ(import_graph(dir / "g.csv"), c3_full());
  EXPECT_THROW(export_graph(c3_full(), 1, GraphFormat::kEdgeCsv, dir / "no" / "g.csv"), IoError);
  EXPECT_EQ(parse_graph_format("graph-json"), GraphFormat::kGraphJson);
  EXPECT_THROW(parse_graph_format("dot"), InvalidArgumentError);
}

TEST(GraphProperty, ExportOrderAndInvariants) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> node(0, 9), w(1, 5), lim(1, 20);
  for (int round = 0; round < 200; ++round) {
    CoocGraph g;
    std::map<std::pair<std::string, std::string>, std::uint64_t> oracle;
    for (int i = 0; i < 25; ++i) {
      auto u = "n" + std::to_string(node(rng)), v = "n" + std::to_string(node(rng));
      if (u == v) continue;
      const auto weight = static_cast<std::uint64_t>(w(rng));
      g.merge_edge(u, v, weight, MergePolicy::kMax);
      auto& slot = oracle[{std::min(u, v), std::max(u, v)}];
      slot = std::max(slot, weight);
    }
    EXPECT_EQ(testing::edge_map(g), oracle);
    const auto top = g.top_edges(static_cast<std::size_t>(lim(rng)));
    for (std::size_t i = 0; i < top.size(); ++i) {
      EXPECT_LT(top[i].source, top[i].target);
      EXPECT_GE(top[i].weight, 1u);
      if (i) EXPECT_GE(top[i - 1].weight, top[i].weight);
    }
    const auto all = g.edges();
    for (const auto& e : all) {
      EXPECT_TRUE(g.has_node(e.source));
      EXPECT_TRUE(g.has_node(e.target));
    }
  }
}

}  // namespace
}  // namespace coocnet
