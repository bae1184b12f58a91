#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "coocnet/bench.hpp"
#include "coocnet/corpus.hpp"
#include "coocnet/error.hpp"
#include "coocnet/expand.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/index.hpp"
#include "coocnet/traversal.hpp"

namespace coocnet::cli {

namespace {

TokenizerConfig tokenizer_config(const RunConfig& rc) {
  TokenizerConfig cfg;
  if (!rc.stopwords.empty()) cfg.stopwords = load_word_list(rc.stopwords);
  if (!rc.dictionary.empty()) cfg.user_dictionary = load_word_list(rc.dictionary);
  cfg.lowercase = rc.lowercase;
  cfg.fields_used.clear();
  std::size_t start = 0;
  while (start <= rc.fields.size()) {
    auto end = rc.fields.find(',', start);
    if (end == std::string::npos) end = rc.fields.size();
    if (end > start) cfg.fields_used.push_back(parse_text_field(rc.fields.substr(start, end - start)));
    start = end + 1;
  }
  if (cfg.fields_used.empty()) throw InvalidArgumentError("--fields selects no text field");
  return cfg;
}

FilterConditions conditions(const RunConfig& rc) {
  FilterConditions cond;
  cond.terms.insert(rc.seeds.begin(), rc.seeds.end());
  for (const auto& f : rc.filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw InvalidArgumentError("--filter expects field=value, got \"" + f + "\"");
    cond.meta_filters[parse_meta_field(f.substr(0, eq))] = f.substr(eq + 1);
  }
  return cond;
}

InvertedIndex open_index(const RunConfig& rc, const TokenizerConfig& cfg, const Corpus* corpus) {
  if (!rc.index.empty()) return load_snapshot(rc.index);
  if (corpus) return InvertedIndex::build(*corpus, cfg);
  throw InvalidArgumentError("either --index or --corpus is required");
}

GraphFormat output_format(const RunConfig& rc) {
  if (rc.format) return parse_graph_format(*rc.format);
  return rc.out.extension() == ".json" ? GraphFormat::kGraphJson : GraphFormat::kEdgeCsv;
}

std::size_t export_limit(const RunConfig& rc) {
  return rc.limit.value_or(std::numeric_limits<std::size_t>::max());
}

int run_index(const RunConfig& rc, std::ostream& out) {
  const auto cfg = tokenizer_config(rc);
  const auto index = InvertedIndex::build(load_corpus(rc.corpus), cfg);
  save_snapshot(index, rc.out);
  out << "indexed " << index.doc_count() << " documents, " << index.term_count() << " terms -> "
      << rc.out.string() << '\n';
  return kExitOk;
}

int run_build(const RunConfig& rc, std::ostream& out) {
  const auto cfg = tokenizer_config(rc);
  const Algorithm algo = parse_algorithm(rc.algo);
  std::optional<Corpus> corpus;
  if (!rc.corpus.empty()) corpus = load_corpus(rc.corpus);
  const auto index = open_index(rc, cfg, corpus ? &*corpus : nullptr);
  const auto cond = conditions(rc);

  CoocGraph graph;
  if (algo == Algorithm::kTraversal) {
    if (!corpus) throw InvalidArgumentError("--algo traversal needs --corpus");
    graph = build_traversal(index, *corpus, cfg, cond);
  } else {
    const ExpandParams params{rc.depth, rc.branch, rc.min_df};
    graph = algo == Algorithm::kBfs ? build_bfs(index, cond, params) : build_recursive(index, cond, params);
  }
  const auto limit = export_limit(rc);
  export_graph(graph, limit, output_format(rc), rc.out);
  out << "graph: " << graph.node_count() << " nodes, " << graph.edge_count() << " edges; exported "
      << std::min(limit, graph.edge_count()) << " edges -> " << rc.out.string() << '\n';
  return kExitOk;
}

int run_bench(const RunConfig& rc, std::ostream& out) {
  const auto cfg = tokenizer_config(rc);
  if (rc.corpus.empty()) throw InvalidArgumentError("bench needs --corpus (traversal re-tokenizes it)");
  const Corpus corpus = load_corpus(rc.corpus);
  const auto index = open_index(rc, cfg, &corpus);
  const auto seeds = rc.seeds.empty() ? top_df_seeds(index, rc.top_seeds) : rc.seeds;
  if (seeds.empty()) throw InvalidArgumentError("no seed terms available");

  alloc::install();
  BenchOptions options;
  options.include_recursive = rc.with_recursive;
  const ExpandParams params{rc.depth, rc.branch, rc.min_df};
  const auto samples = run_benchmark(index, corpus, cfg, seeds, params, rc.reps, options);

  auto summary_path = rc.summary;
  if (summary_path.empty()) summary_path = std::filesystem::path(rc.out).replace_extension(".summary.json");
  write_report(samples, rc.out, summary_path);

  const auto summary = summarize_samples(samples);
  for (const auto& a : summary.algorithms) {
    out << algorithm_name(a.algo) << ": median " << a.wall_time_s.median << " s, median peak "
        << a.peak_mem_bytes.median << " bytes (n=" << a.wall_time_s.n << ")\n";
  }
  auto print_test = [&out](const char* label, const std::optional<ComparisonTest>& t) {
    if (!t) return;
    out << label << ": ";
    if (t->result) {
      out << "statistic " << t->result->statistic << ", p " << t->result->p_value << " ("
          << test_mode_name(t->result->mode) << ")\n";
    } else {
      out << t->error << '\n';
    }
  };
  print_test("time wilcoxon", summary.time_wilcoxon);
  print_test("time mann-whitney", summary.time_mann_whitney);
  print_test("memory wilcoxon", summary.mem_wilcoxon);
  print_test("memory mann-whitney", summary.mem_mann_whitney);
  out << "samples -> " << rc.out.string() << ", summary -> " << summary_path.string() << '\n';
  return kExitOk;
}

int run_export(const RunConfig& rc, std::ostream& out) {
  const auto graph = import_graph(rc.graph);
  const auto limit = export_limit(rc);
  export_graph(graph, limit, output_format(rc), rc.out);
  out << "exported " << std::min(limit, graph.edge_count()) << " edges -> " << rc.out.string() << '\n';
  return kExitOk;
}

int run_stats(const RunConfig& rc, std::ostream& out) {
  const auto cfg = tokenizer_config(rc);
  std::optional<Corpus> corpus;
  if (rc.index.empty() && !rc.corpus.empty()) corpus = load_corpus(rc.corpus);
  const auto index = open_index(rc, cfg, corpus ? &*corpus : nullptr);
  std::ofstream file(rc.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + rc.out.string() + " for writing");
  file << "df,terms\n";
  const auto hist = index.df_histogram();
  for (const auto& [df, n] : hist) file << df << ',' << n << '\n';
  if (!file) throw IoError("error writing " + rc.out.string());
  out << hist.size() << " df buckets over " << index.term_count() << " terms -> " << rc.out.string() << '\n';
  return kExitOk;
}

int run_synth(const RunConfig& rc, std::ostream& out) {
  const auto corpus = generate_synthetic_corpus(rc.n_docs, rc.vocab, rc.mean_len, rc.rng_seed);
  save_corpus(corpus, rc.out);
  out << "generated " << corpus.size() << " documents -> " << rc.out.string() << '\n';
  return kExitOk;
}

void add_tokenizer_flags(CLI::App& sub, RunConfig& rc) {
  sub.add_option("--stopwords", rc.stopwords, "Stopword file, one term per line");
  sub.add_option("--dict", rc.dictionary, "User dictionary file, one phrase per line");
  sub.add_option("--fields", rc.fields, "Comma-separated text fields to tokenize")->capture_default_str();
  sub.add_flag("--lowercase", rc.lowercase, "ASCII-lowercase all tokens");
}

void add_expand_flags(CLI::App& sub, RunConfig& rc) {
  sub.add_option("--depth", rc.depth, "Expansion depth")->check(CLI::PositiveNumber)->capture_default_str();
  sub.add_option("--branch", rc.branch, "High-frequency words per expansion")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub.add_option("--min-df", rc.min_df, "Document-frequency floor for expansion words")->capture_default_str();
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Keyword co-occurrence network construction and benchmarking", "coocnet"};
  app.require_subcommand(1, 1);

  auto* index = app.add_subcommand("index", "Build an index snapshot from a corpus");
  index->add_option("--corpus", rc.corpus, "JSON-lines corpus")->required();
  index->add_option("--out", rc.out, "Snapshot path")->required();
  add_tokenizer_flags(*index, rc);

  auto* build = app.add_subcommand("build", "Construct a co-occurrence graph and export it");
  build->add_option("--index", rc.index, "Index snapshot");
  build->add_option("--corpus", rc.corpus, "Corpus (required for traversal)");
  build->add_option("--algo", rc.algo, "traversal | recursive | bfs")
      ->check(CLI::IsMember({"traversal", "recursive", "bfs"}))
      ->capture_default_str();
  build->add_option("--seed", rc.seeds, "Seed / condition term (repeatable)");
  build->add_option("--filter", rc.filters, "Metadata filter field=value (repeatable)");
  add_expand_flags(*build, rc);
  build->add_option("--limit", rc.limit, "Maximum exported edges")->check(CLI::PositiveNumber);
  build->add_option("--format", rc.format, "edge-csv | graph-json")
      ->check(CLI::IsMember({"edge-csv", "graph-json"}));
  build->add_option("--out", rc.out, "Output graph file")->required();
  add_tokenizer_flags(*build, rc);

  auto* bench = app.add_subcommand("bench", "Benchmark traversal against BFS expansion");
  bench->add_option("--index", rc.index, "Index snapshot");
  bench->add_option("--corpus", rc.corpus, "Corpus")->required();
  bench->add_option("--seed", rc.seeds, "Seed term (repeatable); default: top-df terms");
  bench->add_option("--top-seeds", rc.top_seeds, "Number of top-df seeds when no --seed is given")
      ->capture_default_str();
  add_expand_flags(*bench, rc);
  bench->add_option("--reps", rc.reps, "Repetitions per seed")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_flag("--with-recursive", rc.with_recursive, "Also run the recursive builder");
  bench->add_option("--out", rc.out, "Sample CSV")->required();
  bench->add_option("--summary", rc.summary, "Summary JSON (default: <out>.summary.json)");
  add_tokenizer_flags(*bench, rc);

  auto* exp = app.add_subcommand("export", "Re-export a stored graph");
  exp->add_option("--graph", rc.graph, "Graph file written by build")->required();
  exp->add_option("--limit", rc.limit, "Maximum exported edges")->check(CLI::PositiveNumber);
  exp->add_option("--format", rc.format, "edge-csv | graph-json")->check(CLI::IsMember({"edge-csv", "graph-json"}));
  exp->add_option("--out", rc.out, "Output graph file")->required();

  auto* stats = app.add_subcommand("stats", "Document-frequency histogram as CSV");
  stats->add_option("--index", rc.index, "Index snapshot");
  stats->add_option("--corpus", rc.corpus, "Corpus (when no snapshot is given)");
  stats->add_option("--out", rc.out, "Histogram CSV")->required();
  add_tokenizer_flags(*stats, rc);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--n-docs", rc.n_docs, "Number of documents")->capture_default_str();
  synth->add_option("--vocab", rc.vocab, "Vocabulary size")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--mean-len", rc.mean_len, "Mean tokens per document")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--rng-seed", rc.rng_seed, "Random seed")->capture_default_str();
  synth->add_option("--out", rc.out, "Output JSON-lines corpus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "coocnet: " << e.what() << '\n';
    return kExitUsage;
  }

  rc.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (rc.subcommand == "index") return run_index(rc, out);
    if (rc.subcommand == "build") return run_build(rc, out);
    if (rc.subcommand == "bench") return run_bench(rc, out);
    if (rc.subcommand == "export") return run_export(rc, out);
    if (rc.subcommand == "stats") return run_stats(rc, out);
    return run_synth(rc, out);
  } catch (const Error& e) {
    err << "coocnet " << rc.subcommand << ": " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace coocnet::cli
