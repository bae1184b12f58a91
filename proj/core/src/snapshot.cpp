#include <cstring>
#include <fstream>
#include <iterator>

#include "coocnet/error.hpp"
#include "coocnet/index.hpp"

namespace coocnet {

namespace {

constexpr std::string_view kMagic = "COOCIDX1";
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 8 + 4 + 8;
constexpr std::size_t kTrailerSize = 8;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Writer {
 public:
  void fixed32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void fixed64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<char>((v & 0x7f) | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<char>(v));
  }
  void str(std::string_view s) {
    varint(s.size());
    out_.append(s);
  }
  void raw(std::string_view s) { out_.append(s); }

  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      if (pos_ >= in_.size()) fail("unexpected end of body");
      const auto b = static_cast<unsigned char>(in_[pos_++]);
      v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if (!(b & 0x80)) return v;
    }
    fail("varint too long");
  }
  std::uint32_t varint32() {
    const auto v = varint();
    if (v > 0xffffffffull) fail("value out of range");
    return static_cast<std::uint32_t>(v);
  }
  std::string str() {
    const auto len = varint();
    if (len > in_.size() - pos_) fail("string runs past end of body");
    std::string s(in_.substr(pos_, len));
    pos_ += len;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

  [[noreturn]] static void fail(const std::string& what) {
    throw SnapshotError(SnapshotError::Kind::kFormat, "malformed snapshot: " + what);
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::uint64_t read_fixed(std::string_view bytes, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_snapshot(const InvertedIndex& index) {
  Writer body;
  body.varint(index.doc_count());
  for (const auto& d : index.docs()) {
    body.str(d.doc_id);
    body.str(d.discipline);
    body.str(d.category);
  }
  body.varint(index.term_count());
  for (std::size_t t = 0; t < index.term_count(); ++t) {
    const auto id = static_cast<TermId>(t);
    body.str(index.term(id));
    const auto list = index.postings(id);
    body.varint(list.size());
    DocId prev_doc = 0;
    for (const auto& p : list) {
      body.varint(p.doc_id - prev_doc);
      prev_doc = p.doc_id;
      body.varint(p.tf);
      std::uint32_t prev_pos = 0;
      for (auto pos : p.positions) {
        body.varint(pos - prev_pos);
        prev_pos = pos;
      }
    }
  }

  Writer file;
  file.raw(kMagic);
  file.fixed32(kVersion);
  file.fixed64(body.bytes().size());
  file.raw(body.bytes());
  file.fixed64(fnv1a(file.bytes()));
  return std::move(file.bytes());
}

InvertedIndex decode_snapshot(std::string_view bytes) {
  using Kind = SnapshotError::Kind;
  if (bytes.size() < kMagic.size()) {
    if (kMagic.starts_with(bytes)) throw SnapshotError(Kind::kChecksum, "snapshot truncated");
    throw SnapshotError(Kind::kFormat, "not a snapshot file (bad magic)");
  }
  if (bytes.substr(0, kMagic.size()) != kMagic) {
    throw SnapshotError(Kind::kFormat, "not a snapshot file (bad magic)");
  }
  if (bytes.size() < kMagic.size() + 4) throw SnapshotError(Kind::kChecksum, "snapshot truncated");
  const auto version = static_cast<std::uint32_t>(read_fixed(bytes, kMagic.size(), 4));
  if (version != kVersion) {
    throw SnapshotError(Kind::kVersion, "unsupported snapshot version " + std::to_string(version) +
                                            " (expected " + std::to_string(kVersion) + ")");
  }
  if (bytes.size() < kHeaderSize + kTrailerSize) {
    throw SnapshotError(Kind::kChecksum, "snapshot truncated");
  }
  const auto covered = bytes.substr(0, bytes.size() - kTrailerSize);
  if (fnv1a(covered) != read_fixed(bytes, covered.size(), 8)) {
    throw SnapshotError(Kind::kChecksum, "snapshot checksum mismatch");
  }
  const auto body_len = read_fixed(bytes, kMagic.size() + 4, 8);
  if (body_len != covered.size() - kHeaderSize) {
    throw SnapshotError(Kind::kFormat, "snapshot body length mismatch");
  }

  Reader in(covered.substr(kHeaderSize));
  const auto n_docs = in.varint();
  std::vector<DocMeta> docs;
  for (std::uint64_t d = 0; d < n_docs; ++d) {
    DocMeta meta;
    meta.doc_id = in.str();
    meta.discipline = in.str();
    meta.category = in.str();
    docs.push_back(std::move(meta));
  }
  const auto n_terms = in.varint();
  std::vector<std::string> terms;
  std::vector<std::vector<Posting>> postings;
  for (std::uint64_t t = 0; t < n_terms; ++t) {
    terms.push_back(in.str());
    const auto n_postings = in.varint();
    std::vector<Posting> list;
    std::uint64_t doc = 0;
    for (std::uint64_t i = 0; i < n_postings; ++i) {
      doc += in.varint();
      if (doc >= n_docs) Reader::fail("posting references unknown document");
      Posting p;
      p.doc_id = static_cast<DocId>(doc);
      p.tf = in.varint32();
      std::uint64_t pos = 0;
      for (std::uint32_t j = 0; j < p.tf; ++j) {
        pos += in.varint();
        if (pos > 0xffffffffull) Reader::fail("position out of range");
        p.positions.push_back(static_cast<std::uint32_t>(pos));
      }
      list.push_back(std::move(p));
    }
    postings.push_back(std::move(list));
  }
  if (!in.done()) Reader::fail("trailing bytes after body");

  try {
    return InvertedIndex::from_parts(std::move(docs), std::move(terms), std::move(postings));
  } catch (const Error& e) {
    throw SnapshotError(Kind::kFormat, std::string("inconsistent snapshot: ") + e.what());
  }
}

void save_snapshot(const InvertedIndex& index, const std::filesystem::path& path) {
  const std::string bytes = encode_snapshot(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError(SnapshotError::Kind::kIo, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError(SnapshotError::Kind::kIo, "error writing " + path.string());
}

InvertedIndex load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError(SnapshotError::Kind::kIo, "cannot open snapshot " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw SnapshotError(SnapshotError::Kind::kIo, "error reading " + path.string());
  return decode_snapshot(bytes);
}

}  // namespace coocnet
