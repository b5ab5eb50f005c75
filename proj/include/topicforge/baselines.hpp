#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "topicforge/corpus.hpp"

namespace topicforge {

/// Single multinomial over the vocabulary.
struct UnigramModel {
  std::vector<double> p;
  std::vector<std::uint64_t> n;
};

/// Maximum-likelihood fit: p_k = n_k / sum(n).
UnigramModel fit_unigram(const Corpus& corpus);

struct LogProb {
  double value = 0.0;
  /// True when the input holds a term the model gives probability 0; value
  /// is then -infinity.
  bool impossible = false;
};

/// sum_k n_k ln p_k over the document's counts.
LogProb unigram_log_prob(const UnigramModel& model, const Document& doc);
/// Sum over the documents.
LogProb unigram_log_prob(const UnigramModel& model, const Corpus& corpus);

/// ln Mult(n | p, N), including the multinomial coefficient.
LogProb multinomial_log_pmf(const UnigramModel& model, const Document& doc);

struct WeightedTermId {
  TermId term = 0;
  double weight = 0.0;
};

struct TfidfTable {
  std::vector<std::vector<WeightedTermId>> weights;  // per document, term ascending, tf >= 1
  std::vector<std::uint32_t> document_frequency;     // per term
  std::size_t num_documents = 0;

  double idf(TermId term) const;
};

/// tf = raw count, idf = ln(|D| / df).
TfidfTable fit_tfidf(const Corpus& corpus);

/// Top-k nonzero weights of document d, descending, ties by ascending term
/// id. Throws InvalidArgument for an unknown document or k < 1.
std::vector<WeightedTermId> tfidf_top_terms(const TfidfTable& table, std::size_t d, std::size_t k);

/// TSV with header `doc_id rank term weight`; rank is 1-based.
void write_tfidf_tsv(const std::filesystem::path& path, const Corpus& corpus,
                     const TfidfTable& table, std::size_t k);

/// Per-document ranked term lists read back from a tfidf TSV.
struct TfidfRankings {
  std::map<std::string, std::vector<std::string>> terms;  // doc id -> terms by rank
  std::size_t max_rank = 0;
};

TfidfRankings read_tfidf_tsv(const std::filesystem::path& path);

}  // namespace topicforge
