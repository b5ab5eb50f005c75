#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topicforge/stopwords.hpp"

namespace topicforge {

using TermId = std::uint32_t;

struct RawDocument {
  std::string id;    // source filename
  std::string body;  // valid UTF-8
};

struct IngestOptions {
  bool strip_headers = false;
};

struct IngestFailure {
  std::string id;
  std::string message;
};

struct IngestResult {
  std::vector<RawDocument> documents;  // sorted by id
  std::vector<IngestFailure> failures;
};

/// Reads every regular file directly under `dir`, sorted by filename.
/// Invalid UTF-8 sequences are replaced by U+FFFD. Unreadable files are
/// recorded in `failures` and skipped. Throws DataError when the directory
/// does not exist or holds no regular files.
IngestResult ingest(const std::filesystem::path& dir, const IngestOptions& options = {});

/// Removes a leading "Name: value" header block through the first blank
/// line. Text whose first line is not a header line is returned unchanged.
std::string strip_header_block(std::string_view text);

/// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

/// Lowercase, split on maximal ASCII letter runs, drop tokens shorter than
/// two letters, drop stopwords, then Porter-stem. Locale independent.
std::vector<std::string> preprocess(std::string_view text, const StopwordList& stopwords);

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> terms);

  /// Returns the id of `term`, appending it if it is new.
  TermId add(std::string_view term);
  std::optional<TermId> find(std::string_view term) const;

  const std::string& term(TermId id) const { return terms_.at(id); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> index_;
};

struct TermCount {
  TermId term = 0;
  std::uint32_t count = 0;

  bool operator==(const TermCount&) const = default;
};

struct Document {
  std::string id;
  std::vector<TermCount> entries;  // strictly ascending term, count >= 1

  std::size_t token_count() const;
  bool operator==(const Document&) const = default;
};

struct Corpus {
  Vocabulary vocabulary;
  std::vector<Document> documents;

  std::size_t total_tokens() const;

  /// Throws DataError if any document or vocabulary invariant is broken.
  void validate() const;
};

struct TokenizedDocument {
  std::string id;
  std::vector<std::string> tokens;
};

/// preprocess() over every document, split across `threads` workers.
/// Output order matches input order.
std::vector<TokenizedDocument> preprocess_documents(const std::vector<RawDocument>& docs,
                                                    const StopwordList& stopwords,
                                                    std::size_t threads = 1);

struct BuildResult {
  Corpus corpus;
  std::vector<std::string> dropped;  // ids of documents with no tokens
};

/// Builds the vocabulary in first-occurrence order and counts terms per
/// document. Documents without tokens are dropped and reported. Throws
/// DataError when every document is empty.
BuildResult build_corpus(const std::vector<TokenizedDocument>& docs);

/// Expands a document's counts into a token sequence in entry order.
std::vector<TermId> expand_tokens(const Document& doc);

}  // namespace topicforge
