#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "topicforge/corpus.hpp"

namespace topicforge {

/// Encodes a document as `N id:count,id:count,...` where N is the number of
/// unique terms and ids are 0-based vocabulary indexes.
std::string encode_sparse(const Document& doc);

/// Parses one sparse line. `line_number` is only used in error messages.
/// Throws ParseError on a bad N, non-ascending ids, zero counts or any
/// stray character.
Document decode_sparse(std::string_view line, std::size_t line_number = 1);

struct ManifestEntry {
  enum class Status { kept, dropped, failed };
  Status status;
  std::string id;
  std::string note;
};

/// Files written by the preprocessing stage. The corpus file holds one sparse
/// line per kept document, in manifest order.
struct CorpusFiles {
  std::filesystem::path corpus;
  std::filesystem::path vocabulary;
  std::filesystem::path manifest;

  static CorpusFiles in_directory(const std::filesystem::path& dir);
  /// Vocabulary and manifest assumed to sit next to `corpus_file`.
  static CorpusFiles beside(const std::filesystem::path& corpus_file);
};

void write_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary read_vocabulary(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

void write_corpus(const CorpusFiles& files, const Corpus& corpus,
                  const std::vector<ManifestEntry>& manifest);

/// Reads a corpus file. Document ids come from the manifest's kept entries
/// when one exists, otherwise they are "doc<index>". Checks every term id
/// against the vocabulary.
Corpus read_corpus(const CorpusFiles& files);

}  // namespace topicforge
