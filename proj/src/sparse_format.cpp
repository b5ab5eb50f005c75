#include "topicforge/sparse_format.hpp"

#include <charconv>
#include <limits>

#include "topicforge/error.hpp"
#include "topicforge/text_io.hpp"

namespace topicforge {
namespace fs = std::filesystem;

namespace {

// Canonical unsigned decimal: digits only, no sign, no leading zero.
bool parse_uint(std::string_view s, std::uint64_t& value) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::string encode_sparse(const Document& doc) {
  std::string line = std::to_string(doc.entries.size());
  line.push_back(' ');
  for (std::size_t k = 0; k < doc.entries.size(); ++k) {
    if (k) line.push_back(',');
    line += std::to_string(doc.entries[k].term);
    line.push_back(':');
    line += std::to_string(doc.entries[k].count);
  }
  return line;
}

Document decode_sparse(std::string_view line, std::size_t line_number) {
  const auto space = line.find(' ');
  if (space == std::string_view::npos) throw ParseError(line_number, "missing space after N");
  std::uint64_t n = 0;
  if (!parse_uint(line.substr(0, space), n)) throw ParseError(line_number, "bad unique-term count");
  if (n == 0) throw ParseError(line_number, "document has no terms");

  const std::string_view body = line.substr(space + 1);
  const auto items = split(body, ',');
  if (items.size() != n)
    throw ParseError(line_number, "N says " + std::to_string(n) + " terms, line has " +
                                      std::to_string(items.size()));

  Document doc;
  doc.entries.reserve(items.size());
  for (const auto item : items) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_number, "entry without ':'");
    std::uint64_t id = 0, count = 0;
    if (!parse_uint(item.substr(0, colon), id) ||
        id > std::numeric_limits<TermId>::max())
      throw ParseError(line_number, "bad term id '" + std::string(item.substr(0, colon)) + "'");
    if (!parse_uint(item.substr(colon + 1), count) ||
        count > std::numeric_limits<std::uint32_t>::max())
      throw ParseError(line_number, "bad count '" + std::string(item.substr(colon + 1)) + "'");
    if (count == 0) throw ParseError(line_number, "zero count for term " + std::to_string(id));
    if (!doc.entries.empty() && doc.entries.back().term >= id)
      throw ParseError(line_number, "term ids not strictly ascending");
    doc.entries.push_back({static_cast<TermId>(id), static_cast<std::uint32_t>(count)});
  }
  return doc;
}

CorpusFiles CorpusFiles::in_directory(const fs::path& dir) {
  return {dir / "corpus.txt", dir / "vocab.txt", dir / "manifest.tsv"};
}

CorpusFiles CorpusFiles::beside(const fs::path& corpus_file) {
  const auto dir = corpus_file.parent_path();
  return {corpus_file, dir / "vocab.txt", dir / "manifest.tsv"};
}

void write_vocabulary(const fs::path& path, const Vocabulary& vocab) {
  std::string out;
  for (const auto& t : vocab.terms()) {
    out += t;
    out.push_back('\n');
  }
  write_file(path, out);
}

Vocabulary read_vocabulary(const fs::path& path) {
  auto lines = read_lines(path);
  for (std::size_t k = 0; k < lines.size(); ++k)
    if (lines[k].empty()) throw ParseError(k + 1, "empty vocabulary term");
  return Vocabulary(std::move(lines));
}

namespace {

std::string_view status_name(ManifestEntry::Status s) {
  switch (s) {
    case ManifestEntry::Status::kept:
      return "kept";
    case ManifestEntry::Status::dropped:
      return "dropped";
    case ManifestEntry::Status::failed:
      return "failed";
  }
  return "";
}

}  // namespace

void write_manifest(const fs::path& path, const std::vector<ManifestEntry>& entries) {
  std::string out = "status\tid\tnote\n";
  for (const auto& e : entries) {
    out += status_name(e.status);
    out += '\t';
    out += e.id;
    out += '\t';
    out += e.note;
    out += '\n';
  }
  write_file(path, out);
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "status\tid\tnote") throw ParseError(1, "bad manifest header");
  std::vector<ManifestEntry> entries;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto cols = split(lines[k], '\t');
    if (cols.size() != 3) throw ParseError(k + 1, "manifest rows need 3 columns");
    ManifestEntry e;
    if (cols[0] == "kept") {
      e.status = ManifestEntry::Status::kept;
    } else if (cols[0] == "dropped") {
      e.status = ManifestEntry::Status::dropped;
    } else if (cols[0] == "failed") {
      e.status = ManifestEntry::Status::failed;
    } else {
      throw ParseError(k + 1, "unknown status '" + std::string(cols[0]) + "'");
    }
    e.id = std::string(cols[1]);
    e.note = std::string(cols[2]);
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_corpus(const CorpusFiles& files, const Corpus& corpus,
                  const std::vector<ManifestEntry>& manifest) {
  std::string out;
  for (const auto& d : corpus.documents) {
    out += encode_sparse(d);
    out += '\n';
  }
  write_file(files.corpus, out);
  write_vocabulary(files.vocabulary, corpus.vocabulary);
  write_manifest(files.manifest, manifest);
}

Corpus read_corpus(const CorpusFiles& files) {
  Corpus corpus;
  corpus.vocabulary = read_vocabulary(files.vocabulary);

  std::vector<std::string> ids;
  const bool have_manifest = fs::exists(files.manifest);
  if (have_manifest) {
    for (auto& e : read_manifest(files.manifest))
      if (e.status == ManifestEntry::Status::kept) ids.push_back(std::move(e.id));
  }

  const auto lines = read_lines(files.corpus);
  if (have_manifest && ids.size() != lines.size())
    throw DataError("manifest lists " + std::to_string(ids.size()) + " kept documents but " +
                    files.corpus.string() + " has " + std::to_string(lines.size()) + " lines");
  for (std::size_t k = 0; k < lines.size(); ++k) {
    Document doc = decode_sparse(lines[k], k + 1);
    for (const auto& e : doc.entries)
      if (e.term >= corpus.vocabulary.size())
        throw ParseError(k + 1, "term id " + std::to_string(e.term) + " outside vocabulary of " +
                                    std::to_string(corpus.vocabulary.size()));
    doc.id = have_manifest ? ids[k] : "doc" + std::to_string(k);
    corpus.documents.push_back(std::move(doc));
  }
  corpus.validate();
  return corpus;
}

}  // namespace topicforge
