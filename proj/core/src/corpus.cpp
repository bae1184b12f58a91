#include "coocnet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "coocnet/error.hpp"
#include "json.hpp"

namespace coocnet {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string optional_string(const nlohmann::json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return {};
  if (!it->is_string()) throw FormatError(line, std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

}  // namespace

TextField parse_text_field(std::string_view name) {
  if (name == "title") return TextField::kTitle;
  if (name == "abstract" || name == "abstract_text") return TextField::kAbstract;
  if (name == "keywords") return TextField::kKeywords;
  throw InvalidArgumentError("unknown text field \"" + std::string(name) + "\"");
}

std::string_view text_field_name(TextField field) {
  switch (field) {
    case TextField::kTitle:
      return "title";
    case TextField::kAbstract:
      return "abstract";
    case TextField::kKeywords:
      return "keywords";
  }
  return "?";
}

Tokenizer::Tokenizer(const TokenizerConfig& cfg)
    : lowercase_(cfg.lowercase), fields_(cfg.fields_used) {
  for (const auto& w : cfg.stopwords) {
    if (trim(w).empty()) throw InvalidArgumentError("empty stopword entry");
    stopwords_.insert(normalize(w));
  }
  for (const auto& phrase : cfg.user_dictionary) {
    auto parts = split_ws(phrase);
    if (parts.empty()) throw InvalidArgumentError("empty dictionary entry");
    if (parts.size() < 2) continue;
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) joined += ' ';
      joined += normalize(parts[i]);
    }
    max_phrase_tokens_ = std::max(max_phrase_tokens_, parts.size());
    phrases_.insert(std::move(joined));
  }
}

std::string Tokenizer::normalize(std::string_view s) const {
  return lowercase_ ? ascii_lower(s) : std::string(s);
}

void Tokenizer::emit(std::string term, TokenStream& out) const {
  if (stopwords_.contains(term)) return;
  const auto pos = static_cast<std::uint32_t>(out.tokens.size());
  out.tokens.push_back(Token{std::move(term), pos});
}

void Tokenizer::tokenize_text(std::string_view text, TokenStream& out) const {
  std::vector<std::string> raw;
  for (auto piece : split_ws(text)) raw.push_back(normalize(piece));

  std::size_t i = 0;
  std::string candidate;
  while (i < raw.size()) {
    std::size_t matched = 1;
    const std::size_t longest = std::min(max_phrase_tokens_, raw.size() - i);
    for (std::size_t len = longest; len >= 2; --len) {
      candidate = raw[i];
      for (std::size_t j = 1; j < len; ++j) {
        candidate += ' ';
        candidate += raw[i + j];
      }
      if (phrases_.contains(candidate)) {
        matched = len;
        break;
      }
    }
    if (matched > 1) {
      emit(candidate, out);
    } else {
      emit(std::move(raw[i]), out);
    }
    i += matched;
  }
}

TokenStream Tokenizer::operator()(const Document& doc) const {
  TokenStream out;
  for (TextField field : fields_) {
    switch (field) {
      case TextField::kTitle:
        tokenize_text(doc.title, out);
        break;
      case TextField::kAbstract:
        tokenize_text(doc.abstract_text, out);
        break;
      case TextField::kKeywords:
        for (const auto& kw : doc.keywords) {
          if (!kw.empty()) emit(normalize(kw), out);
        }
        break;
    }
  }
  return out;
}

TokenStream tokenize(const Document& doc, const TokenizerConfig& cfg) {
  return Tokenizer(cfg)(doc);
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file " + path.string());

  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw FormatError(line_no, "record is not a JSON object");

    Document doc;
    auto id = rec.find("doc_id");
    if (id == rec.end() || !id->is_string()) throw FormatError(line_no, "missing string field \"doc_id\"");
    doc.doc_id = id->get<std::string>();
    if (doc.doc_id.empty()) throw FormatError(line_no, "empty doc_id");

    doc.title = optional_string(rec, "title", line_no);
    doc.abstract_text = optional_string(rec, "abstract", line_no);
    doc.discipline = optional_string(rec, "discipline", line_no);
    doc.category = optional_string(rec, "category", line_no);
    if (auto kw = rec.find("keywords"); kw != rec.end() && !kw->is_null()) {
      if (!kw->is_array()) throw FormatError(line_no, "field \"keywords\" must be an array");
      for (const auto& k : *kw) {
        if (!k.is_string()) throw FormatError(line_no, "keywords entries must be strings");
        doc.keywords.push_back(k.get<std::string>());
      }
    }

    if (!seen.insert(doc.doc_id).second) throw DuplicateIdError(doc.doc_id);
    corpus.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("error reading corpus file " + path.string());
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& doc : corpus) {
    nlohmann::ordered_json rec;
    rec["doc_id"] = doc.doc_id;
    rec["title"] = doc.title;
    rec["abstract"] = doc.abstract_text;
    rec["keywords"] = doc.keywords;
    rec["discipline"] = doc.discipline;
    rec["category"] = doc.category;
    out << rec.dump() << '\n';
  }
  if (!out) throw IoError("error writing " + path.string());
}

std::set<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    words.emplace(entry);
  }
  return words;
}

Corpus generate_synthetic_corpus(std::size_t n_docs, std::size_t vocab_size, double mean_len,
                                 std::uint64_t rng_seed) {
  if (vocab_size == 0) throw InvalidArgumentError("vocab_size must be positive");
  if (!(mean_len > 0.0) || !std::isfinite(mean_len)) {
    throw InvalidArgumentError("mean_len must be a positive finite number");
  }

  std::vector<double> cdf(vocab_size);
  double total = 0.0;
  for (std::size_t r = 0; r < vocab_size; ++r) {
    total += 1.0 / static_cast<double>(r + 1);
    cdf[r] = total;
  }
  for (auto& c : cdf) c /= total;

  std::vector<std::string> vocab(vocab_size);
  for (std::size_t r = 0; r < vocab_size; ++r) vocab[r] = "w" + std::to_string(r + 1);

  std::mt19937_64 rng(rng_seed);
  std::poisson_distribution<std::uint32_t> length_dist(mean_len);
  // 53 random mantissa bits, independent of the standard library's
  // generate_canonical.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Corpus corpus;
  corpus.reserve(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    Document doc;
    doc.doc_id = "S" + std::to_string(d);
    const auto len = length_dist(rng);
    for (std::uint32_t t = 0; t < len; ++t) {
      auto it = std::upper_bound(cdf.begin(), cdf.end(), uniform());
      const auto rank = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), vocab_size - 1);
      if (t) doc.title += ' ';
      doc.title += vocab[rank];
    }
    doc.discipline = "disc" + std::to_string(rng() % 5);
    doc.category = "cat" + std::to_string(rng() % 3);
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace coocnet
