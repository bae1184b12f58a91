#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coocnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Every knob of a run, as parsed from the command line.
struct RunConfig {
  std::string subcommand;
  std::filesystem::path corpus;
  std::filesystem::path index;
  std::filesystem::path graph;
  std::filesystem::path stopwords;
  std::filesystem::path dictionary;
  std::string fields = "title,abstract,keywords";
  bool lowercase = false;
  std::string algo = "bfs";
  std::vector<std::string> seeds;
  std::vector<std::string> filters;  // field=value
  std::uint32_t depth = 2;
  std::uint32_t branch = 8;
  std::uint32_t min_df = 1;
  std::optional<std::size_t> limit;
  std::optional<std::string> format;
  std::filesystem::path out;
  std::filesystem::path summary;
  std::uint32_t reps = 5;
  std::size_t top_seeds = 10;
  bool with_recursive = false;
  std::uint64_t rng_seed = 42;
  std::size_t n_docs = 1000;
  std::size_t vocab = 2000;
  double mean_len = 50.0;
};

// Parses argv and runs one subcommand. Returns 0 on success, 1 on a domain
// error and 2 on a usage error; diagnostics go to `err` as one line.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coocnet::cli
