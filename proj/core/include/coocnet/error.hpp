#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coocnet {

// Base of every domain error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// A malformed record in a line-oriented input file.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(std::string doc_id)
      : Error("duplicate doc_id \"" + doc_id + "\""), doc_id_(std::move(doc_id)) {}

  const std::string& doc_id() const noexcept { return doc_id_; }

 private:
  std::string doc_id_;
};

class UnknownDocError : public Error {
 public:
  using Error::Error;
};

class UnknownTermError : public Error {
 public:
  using Error::Error;
};

class CorpusMismatchError : public Error {
 public:
  using Error::Error;
};

class SnapshotError : public Error {
 public:
  enum class Kind { kIo, kFormat, kVersion, kChecksum };

  SnapshotError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class HookNotInstalledError : public Error {
 public:
  using Error::Error;
};

}  // namespace coocnet
