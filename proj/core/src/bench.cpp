#include "coocnet/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

#include "coocnet/traversal.hpp"
#include "csv.hpp"
#include "json.hpp"

namespace coocnet {

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kTraversal:
      return "traversal";
    case Algorithm::kRecursive:
      return "recursive";
    case Algorithm::kBfs:
      return "bfs";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "traversal") return Algorithm::kTraversal;
  if (name == "recursive") return Algorithm::kRecursive;
  if (name == "bfs") return Algorithm::kBfs;
  throw InvalidArgumentError("unknown algorithm \"" + std::string(name) + "\"");
}

unsigned bench_warmup_from_env() {
  const char* raw = std::getenv("COOCNET_BENCH_WARMUP");
  if (!raw || !*raw) return 1;
  const std::string_view text(raw);
  unsigned value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidArgumentError("COOCNET_BENCH_WARMUP must be a nonnegative integer, got \"" +
                               std::string(text) + "\"");
  }
  return value;
}

std::vector<std::string> top_df_seeds(const InvertedIndex& index, std::size_t k) {
  std::vector<std::string> seeds;
  if (k == 0) return seeds;
  for (const auto& tc : index.top_k_ids(index.all_docs(), k, {}, 1)) seeds.push_back(index.term(tc.term));
  return seeds;
}

std::vector<BenchSample> run_benchmark(const InvertedIndex& index, const Corpus& corpus,
                                       const TokenizerConfig& cfg,
                                       const std::vector<std::string>& seeds,
                                       const ExpandParams& params, unsigned reps,
                                       const BenchOptions& options) {
  if (reps == 0) throw InvalidArgumentError("reps must be at least 1");
  for (const auto& s : seeds) {
    if (!index.find_term(s)) throw UnknownTermError("seed term \"" + s + "\" is not in the index");
  }
  const unsigned warmup = options.warmup ? *options.warmup : bench_warmup_from_env();

  std::vector<Algorithm> algos = {Algorithm::kTraversal, Algorithm::kBfs};
  if (options.include_recursive) algos.push_back(Algorithm::kRecursive);

  auto run_once = [&](Algorithm algo, const std::string& seed) {
    FilterConditions cond;
    cond.terms.insert(seed);
    return measure_run([&] {
      switch (algo) {
        case Algorithm::kTraversal:
          return build_traversal(index, corpus, cfg, cond);
        case Algorithm::kRecursive:
          return build_recursive(index, cond, params);
        case Algorithm::kBfs:
          break;
      }
      return build_bfs(index, cond, params);
    });
  };

  std::vector<BenchSample> samples;
  samples.reserve(seeds.size() * reps * algos.size());
  for (const auto& seed : seeds) {
    for (unsigned w = 0; w < warmup; ++w) {
      for (Algorithm algo : algos) (void)run_once(algo, seed);
    }
    for (unsigned rep = 0; rep < reps; ++rep) {
      for (std::size_t i = 0; i < algos.size(); ++i) {
        const Algorithm algo = algos[(i + rep) % algos.size()];
        auto m = run_once(algo, seed);
        samples.push_back(BenchSample{algo, seed, rep, m.wall_time_s, m.peak_mem_bytes,
                                      m.result.edge_count()});
      }
    }
  }
  return samples;
}

namespace {

ComparisonTest guarded(auto&& fn) {
  ComparisonTest t;
  try {
    t.result = fn();
  } catch (const Error& e) {
    t.error = e.what();
  }
  return t;
}

}  // namespace

BenchSummary summarize_samples(const std::vector<BenchSample>& samples) {
  BenchSummary summary;
  std::map<Algorithm, std::pair<std::vector<double>, std::vector<double>>> by_algo;
  for (const auto& s : samples) {
    by_algo[s.algo].first.push_back(s.wall_time_s);
    by_algo[s.algo].second.push_back(static_cast<double>(s.peak_mem_bytes));
  }
  for (const auto& [algo, series] : by_algo) {
    summary.algorithms.push_back(AlgorithmSummary{algo, summarize(series.first), summarize(series.second)});
  }

  auto trav = by_algo.find(Algorithm::kTraversal);
  auto bfs = by_algo.find(Algorithm::kBfs);
  if (trav == by_algo.end() || bfs == by_algo.end()) return summary;

  std::map<std::pair<std::string, std::uint32_t>, const BenchSample*> bfs_runs;
  for (const auto& s : samples) {
    if (s.algo == Algorithm::kBfs) bfs_runs[{s.seed_term, s.rep}] = &s;
  }
  std::vector<std::pair<double, double>> time_pairs, mem_pairs;
  for (const auto& s : samples) {
    if (s.algo != Algorithm::kTraversal) continue;
    auto it = bfs_runs.find({s.seed_term, s.rep});
    if (it == bfs_runs.end()) continue;
    time_pairs.emplace_back(s.wall_time_s, it->second->wall_time_s);
    mem_pairs.emplace_back(static_cast<double>(s.peak_mem_bytes),
                           static_cast<double>(it->second->peak_mem_bytes));
  }

  summary.time_wilcoxon = guarded([&] { return wilcoxon_signed_rank(time_pairs); });
  summary.mem_wilcoxon = guarded([&] { return wilcoxon_signed_rank(mem_pairs); });
  summary.time_mann_whitney =
      guarded([&] { return mann_whitney_u(trav->second.first, bfs->second.first); });
  summary.mem_mann_whitney =
      guarded([&] { return mann_whitney_u(trav->second.second, bfs->second.second); });
  return summary;
}

void write_samples_csv(const std::vector<BenchSample>& samples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "algo,seed,rep,wall_time_s,peak_mem_bytes\n";
  char buf[64];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.9g", s.wall_time_s);
    out << algorithm_name(s.algo) << ',' << csv::field(s.seed_term) << ',' << s.rep << ',' << buf << ','
        << s.peak_mem_bytes << '\n';
  }
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<BenchSample> read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<BenchSample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "algo,seed,rep,wall_time_s,peak_mem_bytes") throw FormatError(1, "unexpected header");
      continue;
    }
    if (line.empty()) continue;
    const auto fields = csv::split_line(line, line_no);
    if (fields.size() != 5) throw FormatError(line_no, "expected 5 fields");
    try {
      BenchSample s;
      s.algo = parse_algorithm(fields[0]);
      s.seed_term = fields[1];
      s.rep = static_cast<std::uint32_t>(std::stoul(fields[2]));
      s.wall_time_s = std::stod(fields[3]);
      s.peak_mem_bytes = std::stoull(fields[4]);
      samples.push_back(std::move(s));
    } catch (const std::logic_error& e) {
      throw FormatError(line_no, std::string("bad field: ") + e.what());
    }
  }
  return samples;
}

namespace {

nlohmann::ordered_json box_json(const BoxSummary& b) {
  nlohmann::ordered_json j;
  j["n"] = b.n;
  j["mean"] = b.mean;
  j["min"] = b.min;
  j["q1"] = b.q1;
  j["median"] = b.median;
  j["q3"] = b.q3;
  j["max"] = b.max;
  j["whisker_low"] = b.whisker_low;
  j["whisker_high"] = b.whisker_high;
  j["outliers"] = b.outliers;
  return j;
}

nlohmann::ordered_json test_json(const std::optional<ComparisonTest>& t) {
  if (!t) return nullptr;
  nlohmann::ordered_json j;
  if (!t->result) {
    j["error"] = t->error;
    return j;
  }
  j["method"] = test_method_name(t->result->method);
  j["mode"] = test_mode_name(t->result->mode);
  j["statistic"] = t->result->statistic;
  j["p_value"] = t->result->p_value;
  return j;
}

}  // namespace

std::string render_summary_json(const BenchSummary& summary) {
  nlohmann::ordered_json doc;
  doc["algorithms"] = nlohmann::ordered_json::object();
  for (const auto& a : summary.algorithms) {
    nlohmann::ordered_json entry;
    entry["wall_time_s"] = box_json(a.wall_time_s);
    entry["peak_mem_bytes"] = box_json(a.peak_mem_bytes);
    doc["algorithms"][std::string(algorithm_name(a.algo))] = std::move(entry);
  }
  nlohmann::ordered_json tests;
  tests["comparison"] = {"traversal", "bfs"};
  tests["wall_time_s"]["wilcoxon"] = test_json(summary.time_wilcoxon);
  tests["wall_time_s"]["mann_whitney"] = test_json(summary.time_mann_whitney);
  tests["peak_mem_bytes"]["wilcoxon"] = test_json(summary.mem_wilcoxon);
  tests["peak_mem_bytes"]["mann_whitney"] = test_json(summary.mem_mann_whitney);
  doc["tests"] = std::move(tests);
  return doc.dump(2) + "\n";
}

void write_report(const std::vector<BenchSample>& samples, const std::filesystem::path& csv_path,
                  const std::filesystem::path& summary_path) {
  if (samples.empty()) throw InvalidArgumentError("report needs at least one sample");
  write_samples_csv(samples, csv_path);
  const std::string json = render_summary_json(summarize_samples(samples));
  std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + summary_path.string() + " for writing");
  out << json;
  if (!out) throw IoError("error writing " + summary_path.string());
}

}  // namespace coocnet
