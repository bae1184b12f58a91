#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "coocnet/alloc_tracker.hpp"
#include "coocnet/corpus.hpp"
#include "coocnet/error.hpp"
#include "coocnet/expand.hpp"
#include "coocnet/index.hpp"
#include "coocnet/stats.hpp"

namespace coocnet {

enum class Algorithm { kTraversal, kRecursive, kBfs };

std::string_view algorithm_name(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

template <class R>
struct Measured {
  double wall_time_s = 0.0;
  std::uint64_t peak_mem_bytes = 0;
  R result;
};

template <>
struct Measured<void> {
  double wall_time_s = 0.0;
  std::uint64_t peak_mem_bytes = 0;
};

// Runs `task` once, timing it on the steady clock and recording the
// high-water mark of net heap bytes allocated while it ran. Memory still held
// by the returned value counts towards the peak. Throws HookNotInstalledError
// unless alloc::install() has been called.
template <class Task>
auto measure_run(Task&& task) -> Measured<std::invoke_result_t<Task&>> {
  using R = std::invoke_result_t<Task&>;
  using Clock = std::chrono::steady_clock;
  if (!alloc::installed()) throw HookNotInstalledError("allocation tracking hook is not installed");

  const auto baseline = alloc::begin_window();
  const auto start = Clock::now();
  if constexpr (std::is_void_v<R>) {
    task();
    const auto stop = Clock::now();
    return Measured<void>{std::chrono::duration<double>(stop - start).count(),
                          alloc::window_peak(baseline)};
  } else {
    R result = task();
    const auto stop = Clock::now();
    return Measured<R>{std::chrono::duration<double>(stop - start).count(),
                       alloc::window_peak(baseline), std::move(result)};
  }
}

struct BenchSample {
  Algorithm algo = Algorithm::kTraversal;
  std::string seed_term;
  std::uint32_t rep = 0;
  double wall_time_s = 0.0;
  std::uint64_t peak_mem_bytes = 0;
  std::size_t edge_count = 0;  // not part of the CSV
};

struct BenchOptions {
  bool include_recursive = false;
  // Warm-up runs per (algorithm, seed); COOCNET_BENCH_WARMUP or 1 when unset.
  std::optional<unsigned> warmup;
};

// COOCNET_BENCH_WARMUP, defaulting to 1. Throws InvalidArgumentError on a
// value that is not a nonnegative integer.
unsigned bench_warmup_from_env();

// The k terms with highest document frequency, (df desc, term asc).
std::vector<std::string> top_df_seeds(const InvertedIndex& index, std::size_t k);

// For each seed and repetition runs traversal (cond = {seed}) and BFS (seed
// {seed}), plus recursive when enabled, rotating the algorithm order every
// repetition. Warm-up runs are discarded. All seeds are validated before any
// run; an absent seed raises UnknownTermError.
std::vector<BenchSample> run_benchmark(const InvertedIndex& index, const Corpus& corpus,
                                       const TokenizerConfig& cfg,
                                       const std::vector<std::string>& seeds,
                                       const ExpandParams& params, unsigned reps,
                                       const BenchOptions& options = {});

struct AlgorithmSummary {
  Algorithm algo = Algorithm::kTraversal;
  BoxSummary wall_time_s;
  BoxSummary peak_mem_bytes;
};

// A test that could not be computed (e.g. all paired differences zero) keeps
// its error message instead of a result.
struct ComparisonTest {
  std::optional<TestResult> result;
  std::string error;
};

struct BenchSummary {
  std::vector<AlgorithmSummary> algorithms;
  // Traversal against BFS; present when both were run.
  std::optional<ComparisonTest> time_wilcoxon;
  std::optional<ComparisonTest> time_mann_whitney;
  std::optional<ComparisonTest> mem_wilcoxon;
  std::optional<ComparisonTest> mem_mann_whitney;
};

BenchSummary summarize_samples(const std::vector<BenchSample>& samples);

// CSV columns: algo,seed,rep,wall_time_s,peak_mem_bytes.
void write_samples_csv(const std::vector<BenchSample>& samples, const std::filesystem::path& path);
std::vector<BenchSample> read_samples_csv(const std::filesystem::path& path);
std::string render_summary_json(const BenchSummary& summary);

// Writes the sample CSV and the summary JSON. Throws InvalidArgumentError on
// an empty sample list.
void write_report(const std::vector<BenchSample>& samples, const std::filesystem::path& csv_path,
                  const std::filesystem::path& summary_path);

}  // namespace coocnet
