#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace coocnet {

// One corpus record.
struct Document {
  std::string doc_id;
  std::string title;
  std::string abstract_text;
  std::vector<std::string> keywords;
  std::string discipline;
  std::string category;

  friend bool operator==(const Document&, const Document&) = default;
};

using Corpus = std::vector<Document>;

enum class TextField { kTitle, kAbstract, kKeywords };

// Parses "title", "abstract" (or "abstract_text") and "keywords".
TextField parse_text_field(std::string_view name);
std::string_view text_field_name(TextField field);

struct TokenizerConfig {
  std::set<std::string> stopwords;
  // Multi-token phrases joined into a single token by longest match.
  std::set<std::string> user_dictionary;
  bool lowercase = false;
  std::vector<TextField> fields_used = {TextField::kTitle, TextField::kAbstract,
                                        TextField::kKeywords};
};

struct Token {
  std::string term;
  std::uint32_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenStream {
  std::vector<Token> tokens;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

// A TokenizerConfig compiled for repeated use. Construction validates the
// config (no empty stopword or dictionary entries).
class Tokenizer {
 public:
  explicit Tokenizer(const TokenizerConfig& cfg);

  TokenStream operator()(const Document& doc) const;

 private:
  void emit(std::string term, TokenStream& out) const;
  void tokenize_text(std::string_view text, TokenStream& out) const;
  std::string normalize(std::string_view s) const;

  std::unordered_set<std::string> stopwords_;
  std::unordered_set<std::string> phrases_;
  std::size_t max_phrase_tokens_ = 1;
  bool lowercase_;
  std::vector<TextField> fields_;
};

TokenStream tokenize(const Document& doc, const TokenizerConfig& cfg);

// JSON-lines corpus: one object per line with "doc_id" (required), "title",
// "abstract", "keywords" (array), "discipline", "category". Blank lines are
// skipped.
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Plain-text word list, one entry per line. Lines starting with '#' and blank
// lines are ignored; surrounding whitespace is trimmed.
std::set<std::string> load_word_list(const std::filesystem::path& path);

// Token counts per document are Poisson(mean_len); terms "w1".."w<vocab_size>"
// are drawn with probability proportional to 1/rank. Metadata labels are
// drawn uniformly from five disciplines and three categories.
Corpus generate_synthetic_corpus(std::size_t n_docs, std::size_t vocab_size,
                                 double mean_len, std::uint64_t rng_seed);

}  // namespace coocnet
