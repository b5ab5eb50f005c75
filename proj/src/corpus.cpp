#include "topicforge/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "topicforge/error.hpp"
#include "topicforge/porter_stemmer.hpp"

namespace topicforge {
namespace fs = std::filesystem;

namespace {

bool is_header_line(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 33 || c > 126) return false;
  }
  return true;
}

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(static_cast<char>(b0));
      ++i;
      continue;
    }
    std::size_t len = 0;
    unsigned char lo = 0x80, hi = 0xBF;  // bounds for the second byte
    if (b0 >= 0xC2 && b0 <= 0xDF) {
      len = 2;
    } else if (b0 >= 0xE0 && b0 <= 0xEF) {
      len = 3;
      if (b0 == 0xE0) lo = 0xA0;
      if (b0 == 0xED) hi = 0x9F;
    } else if (b0 >= 0xF0 && b0 <= 0xF4) {
      len = 4;
      if (b0 == 0xF0) lo = 0x90;
      if (b0 == 0xF4) hi = 0x8F;
    }
    if (len == 0) {
      out.append(kReplacement);
      ++i;
      continue;
    }
    // Maximal valid prefix of a sequence becomes one replacement character.
    std::size_t k = 1;
    for (; k < len && i + k < n; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      const unsigned char l = (k == 1) ? lo : 0x80;
      const unsigned char h = (k == 1) ? hi : 0xBF;
      if (b < l || b > h) break;
    }
    if (k == len) {
      out.append(bytes.substr(i, len));
    } else {
      out.append(kReplacement);
    }
    i += k;
  }
  return out;
}

std::string strip_header_block(std::string_view text) {
  const auto first_end = text.find('\n');
  std::string_view first = text.substr(0, first_end);
  if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
  if (!is_header_line(first)) return std::string(text);

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    const bool last = end == std::string_view::npos;
    if (last) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) return std::string(last ? std::string_view{} : text.substr(end + 1));
    pos = end + 1;
  }
  // Headers with no terminating blank line: nothing left as body.
  return {};
}

IngestResult ingest(const fs::path& dir, const IngestOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("not a directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file(ec)) files.push_back(entry.path());
  }
  if (ec) throw DataError("cannot list " + dir.string() + ": " + ec.message());
  if (files.empty()) throw DataError("no files in " + dir.string());

  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  IngestResult result;
  for (const auto& path : files) {
    const std::string id = path.filename().string();
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      result.failures.push_back({id, "cannot open file"});
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
      result.failures.push_back({id, "read error"});
      continue;
    }
    std::string body = sanitize_utf8(ss.str());
    if (options.strip_headers) body = strip_header_block(body);
    result.documents.push_back({id, std::move(body)});
  }
  return result;
}

std::vector<std::string> preprocess(std::string_view text, const StopwordList& stopwords) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  std::string word;
  while (i < n) {
    if (!is_ascii_letter(text[i])) {
      ++i;
      continue;
    }
    word.clear();
    while (i < n && is_ascii_letter(text[i])) word.push_back(ascii_lower(text[i++]));
    if (word.size() < 2 || stopwords.contains(word)) continue;
    tokens.push_back(porter_stem(word));
  }
  return tokens;
}

std::vector<TokenizedDocument> preprocess_documents(const std::vector<RawDocument>& docs,
                                                    const StopwordList& stopwords,
                                                    std::size_t threads) {
  std::vector<TokenizedDocument> out(docs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
      out[k] = {docs[k].id, preprocess(docs[k].body, stopwords)};
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(docs.size(), 1));
  if (threads == 1) {
    work(0, docs.size());
    return out;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (docs.size() + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(docs.size(), begin + chunk);
    if (begin >= end) break;
    workers.emplace_back(work, begin, end);
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) {
  for (auto& t : terms) {
    if (index_.count(t)) throw DataError("duplicate vocabulary term: " + t);
    index_.emplace(t, static_cast<TermId>(terms_.size()));
    terms_.push_back(std::move(t));
  }
}

TermId Vocabulary::add(std::string_view term) {
  std::string key(term);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<TermId>(terms_.size());
  index_.emplace(key, id);
  terms_.push_back(std::move(key));
  return id;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Document::token_count() const {
  return std::accumulate(entries.begin(), entries.end(), std::size_t{0},
                         [](std::size_t acc, const TermCount& e) { return acc + e.count; });
}

std::size_t Corpus::total_tokens() const {
  std::size_t total = 0;
  for (const auto& d : documents) total += d.token_count();
  return total;
}

void Corpus::validate() const {
  if (documents.empty()) throw DataError("corpus has no documents");
  for (const auto& d : documents) {
    if (d.entries.empty()) throw DataError("document '" + d.id + "' is empty");
    for (std::size_t k = 0; k < d.entries.size(); ++k) {
      const auto& e = d.entries[k];
      if (e.count == 0) throw DataError("document '" + d.id + "' has a zero count");
      if (e.term >= vocabulary.size())
        throw DataError("document '" + d.id + "' references term " + std::to_string(e.term) +
                        " outside the vocabulary");
      if (k > 0 && d.entries[k - 1].term >= e.term)
        throw DataError("document '" + d.id + "' term ids are not strictly ascending");
    }
  }
}

BuildResult build_corpus(const std::vector<TokenizedDocument>& docs) {
  BuildResult result;
  auto& corpus = result.corpus;
  for (const auto& doc : docs) {
    if (doc.tokens.empty()) {
      result.dropped.push_back(doc.id);
      continue;
    }
    std::vector<TermId> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) ids.push_back(corpus.vocabulary.add(t));
    std::sort(ids.begin(), ids.end());
    Document out{doc.id, {}};
    for (auto id : ids) {
      if (!out.entries.empty() && out.entries.back().term == id) {
        ++out.entries.back().count;
      } else {
        out.entries.push_back({id, 1});
      }
    }
    corpus.documents.push_back(std::move(out));
  }
  if (corpus.documents.empty()) throw DataError("every document is empty after preprocessing");
  return result;
}

std::vector<TermId> expand_tokens(const Document& doc) {
  std::vector<TermId> tokens;
  tokens.reserve(doc.token_count());
  for (const auto& e : doc.entries) tokens.insert(tokens.end(), e.count, e.term);
  return tokens;
}

}  // namespace topicforge
