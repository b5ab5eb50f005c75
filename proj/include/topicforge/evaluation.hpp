#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "topicforge/baselines.hpp"
#include "topicforge/lda.hpp"
#include "topicforge/stopwords.hpp"

namespace topicforge {

using TermSet = std::set<std::string>;

/// Ordered, duplicate-free list of preprocessed target terms. Target lists
/// of size g are the first g entries.
class TargetList {
 public:
  TargetList() = default;
  /// Terms are taken verbatim; duplicates after the first are dropped.
  explicit TargetList(std::vector<std::string> terms);

  /// Runs each raw word through the corpus preprocessing so both sides of a
  /// comparison live in the same token space. Words that vanish (stopwords,
  /// single letters) are skipped.
  static TargetList from_raw(std::span<const std::string> words, const StopwordList& stopwords);
  static TargetList load(const std::filesystem::path& path, const StopwordList& stopwords);

  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  /// First g terms; throws InvalidArgument when g is 0 or exceeds size().
  TermSet prefix(std::size_t g) const;

 private:
  std::vector<std::string> terms_;
};

/// Union of the top-tw words of the m topics with the largest psi for
/// document d (ties by ascending topic index). tw is capped at the
/// vocabulary size.
TermSet doc_topic_words_lda(const LdaModel& model, std::size_t d, std::size_t tw, std::size_t m = 1);

struct Precision {
  std::size_t n_correct = 0;
  std::size_t n_total = 0;
  double value = 0.0;  // n_correct / n_total
};

/// A document is correct when its term set meets the target set.
Precision precision(std::span<const TermSet> doc_terms, const TermSet& targets);

struct EvalRow {
  std::string model;  // "lda" or "tfidf"
  std::size_t tw = 0;
  std::size_t tg = 0;
  Precision precision;
};

struct EvalReport {
  std::vector<EvalRow> rows;
};

struct SweepConfig {
  std::vector<std::size_t> tw_values{5, 10, 15};
  std::size_t tg_min = 1;
  std::size_t tg_max = 15;
  std::size_t lda_topics_per_doc = 1;
};

/// Per-document TF-IDF term lists, aligned with the LDA model's documents.
using TfidfTermLists = std::vector<std::vector<std::string>>;

TfidfTermLists tfidf_term_lists(const TfidfTable& table, const Vocabulary& vocab, std::size_t k);

/// Precision for both models over every |TW| and every |TG| in
/// [tg_min, tg_max]. Rows are ordered model, tw, tg.
EvalReport sweep_report(const LdaModel& model, const TfidfTermLists& tfidf_terms,
                        const TargetList& targets, const SweepConfig& config);

/// CSV `model,tw,tg,n_correct,n_total,precision`.
void write_report_csv(const std::filesystem::path& path, const EvalReport& report);

}  // namespace topicforge
