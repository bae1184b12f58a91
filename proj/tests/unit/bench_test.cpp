#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "coocnet/bench.hpp"
#include "coocnet/error.hpp"
#include "coocnet/traversal.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace coocnet {
namespace {

class HookEnvironment : public ::testing::Environment {
 public:
  void SetUp() override { alloc::install(); }
};

const auto* const kHook = ::testing::AddGlobalTestEnvironment(new HookEnvironment);

struct Fixture {
  Corpus corpus = generate_synthetic_corpus(300, 200, 20.0, 17);
  InvertedIndex index = InvertedIndex::build(corpus, {});
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

BenchOptions quick(bool recursive = false) {
  BenchOptions o;
  o.include_recursive = recursive;
  o.warmup = 0;
  return o;
}

TEST(MeasureRun, IdenticalBuildsHaveEqualPeaks) {
  const auto& f = fixture();
  const FilterConditions seed{{"w1"}, {}};
  auto a = measure_run([&] { return build_bfs(f.index, seed, ExpandParams{3, 4, 1}); });
  auto b = measure_run([&] { return build_bfs(f.index, seed, ExpandParams{3, 4, 1}); });
  EXPECT_GT(a.peak_mem_bytes, 0u);
  EXPECT_EQ(a.peak_mem_bytes, b.peak_mem_bytes);
  EXPECT_EQ(a.result, b.result);
}

TEST(RunBenchmark, SampleCounts) {
  const auto& f = fixture();
  EXPECT_EQ(run_benchmark(f.index, f.corpus, {}, {"w1"}, ExpandParams{2, 3, 1}, 1, quick()).size(), 2u);
  EXPECT_EQ(run_benchmark(f.index, f.corpus, {}, {"w1", "w2"}, ExpandParams{2, 3, 1}, 2, quick(true)).size(), 12u);
}

TEST(RunBenchmark, TopDfSeedsAllSucceed) {
  const auto& f = fixture();
  const auto seeds = top_df_seeds(f.index, 10);
  ASSERT_EQ(seeds.size(), 10u);
  EXPECT_EQ(seeds.front(), "w1");
  const auto samples = run_benchmark(f.index, f.corpus, {}, seeds, ExpandParams{2, 3, 1}, 1, quick());
  EXPECT_EQ(samples.size(), 20u);
  for (const auto& s : samples) {
    EXPECT_GE(s.wall_time_s, 0.0);
    EXPECT_GT(s.edge_count, 0u);
  }
}

TEST(RunBenchmark, UnknownSeedFailsBeforeAnyRun) {
  const auto& f = fixture();
  EXPECT_THROW(run_benchmark(f.index, f.corpus, {}, {"w1", "zzz"}, ExpandParams{}, 1, quick()), UnknownTermError);
  EXPECT_THROW(run_benchmark(f.index, f.corpus, {}, {"w1"}, ExpandParams{}, 0, quick()), InvalidArgumentError);
}

TEST(RunBenchmark, AlternatesOrderAndIsDeterministic) {
  const auto& f = fixture();
  const std::vector<std::string> seeds{"w3", "w1"};
  const auto a = run_benchmark(f.index, f.corpus, {}, seeds, ExpandParams{2, 3, 1}, 3, quick(true));
  const auto b = run_benchmark(f.index, f.corpus, {}, seeds, ExpandParams{2, 3, 1}, 3, quick(true));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].algo, b[i].algo);
    EXPECT_EQ(a[i].seed_term, b[i].seed_term);
    EXPECT_EQ(a[i].rep, b[i].rep);
    EXPECT_EQ(a[i].edge_count, b[i].edge_count);
    EXPECT_EQ(a[i].peak_mem_bytes, b[i].peak_mem_bytes);
  }
  EXPECT_EQ(a[0].algo, Algorithm::kTraversal);
  EXPECT_NE(a[3].algo, Algorithm::kTraversal);
}

TEST(Warmup, EnvironmentOverride) {
  ::unsetenv("COOCNET_BENCH_WARMUP");
  EXPECT_EQ(bench_warmup_from_env(), 1u);
  ::setenv("COOCNET_BENCH_WARMUP", "3", 1);
  EXPECT_EQ(bench_warmup_from_env(), 3u);
  ::setenv("COOCNET_BENCH_WARMUP", "x", 1);
  EXPECT_THROW(bench_warmup_from_env(), InvalidArgumentError);
  ::unsetenv("COOCNET_BENCH_WARMUP");
}

BenchSample sample(Algorithm algo, const std::string& seed, std::uint32_t rep, double t, std::uint64_t m) {
  return BenchSample{algo, seed, rep, t, m, 0};
}

TEST(Report, TwoSamplesGiveThreeCsvLines) {
  testing::TempDir dir;
  const std::vector<BenchSample> s{sample(Algorithm::kTraversal, "w1", 0, 0.5, 100),
                                   sample(Algorithm::kBfs, "w1", 0, 0.25, 40)};
  write_report(s, dir / "s.csv", dir / "s.json");
  std::ifstream in(dir / "s.csv");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "algo,seed,rep,wall_time_s,peak_mem_bytes");
  EXPECT_EQ(lines[1], "traversal,w1,0,0.5,100");
  EXPECT_THROW(write_report({}, dir / "e.csv", dir / "e.json"), InvalidArgumentError);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

TEST(Report, SummaryMediansMatchCsvAndPValuesInRange) {
  testing::TempDir dir;
  std::vector<BenchSample> s;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(0.001, 0.01);
  for (std::uint32_t rep = 0; rep < 4; ++rep) {
    for (const char* seed : {"w1", "a,b"}) {
      s.push_back(sample(Algorithm::kTraversal, seed, rep, t(rng), 1000 + rep * 7));
      s.push_back(sample(Algorithm::kBfs, seed, rep, t(rng) / 3, 200 + rep));
    }
  }
  write_report(s, dir / "s.csv", dir / "s.json");
  const auto back = read_samples_csv(dir / "s.csv");
  ASSERT_EQ(back.size(), s.size());
  EXPECT_EQ(back[2].seed_term, "a,b");

  std::map<std::string, std::vector<double>> times, mems;
  for (const auto& b : back) {
    times[std::string(algorithm_name(b.algo))].push_back(b.wall_time_s);
    mems[std::string(algorithm_name(b.algo))].push_back(static_cast<double>(b.peak_mem_bytes));
  }
  std::ifstream in(dir / "s.json");
  const auto doc = nlohmann::json::parse(in);
  for (const auto& [algo, v] : times) {
    EXPECT_NEAR(doc["algorithms"][algo]["wall_time_s"]["median"].get<double>(), median(v), 1e-9);
    EXPECT_DOUBLE_EQ(doc["algorithms"][algo]["peak_mem_bytes"]["median"].get<double>(), median(mems[algo]));
  }
  for (const char* metric : {"wall_time_s", "peak_mem_bytes"}) {
    for (const char* test : {"wilcoxon", "mann_whitney"}) {
      const double p = doc["tests"][metric][test]["p_value"].get<double>();
      EXPECT_GT(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
}

TEST(Report, UncomputableTestRecordsError) {
  const std::vector<BenchSample> s{sample(Algorithm::kTraversal, "w1", 0, 0.5, 100),
                                   sample(Algorithm::kBfs, "w1", 0, 0.25, 100)};
  const auto summary = summarize_samples(s);
  ASSERT_TRUE(summary.mem_wilcoxon);
  EXPECT_FALSE(summary.mem_wilcoxon->result);
  EXPECT_FALSE(summary.mem_wilcoxon->error.empty());
  EXPECT_NE(render_summary_json(summary).find("\"error\""), std::string::npos);
}

}  // namespace
}  // namespace coocnet
