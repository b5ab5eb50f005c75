#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topicforge/corpus.hpp"
#include "topicforge/matrix.hpp"
#include "topicforge/rng.hpp"

namespace topicforge {

using TopicId = std::uint32_t;

/// Sampler hyperparameters. Topic indexes are 0-based throughout the API.
struct Hyperparams {
  std::size_t topics = 1;
  double alpha = 50.0;   // symmetric Dirichlet on document-topic mixtures
  double chi = 0.01;     // symmetric Dirichlet on topic-word distributions
  std::size_t burn_in = 500;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;

  /// chi = 0.01, alpha = 50 / topics, 1000 sweeps with 500 burn-in.
  static Hyperparams defaults(std::size_t topics);

  /// Throws InvalidArgument unless topics >= 1, alpha > 0, chi > 0 and
  /// iterations >= max(burn_in, 1).
  void validate() const;

  bool operator==(const Hyperparams&) const = default;
};

/// Topic assignments for every token plus the count tables they imply.
///
/// Tables are signed so that a broken decrement shows up as a negative count
/// instead of wrapping.
struct GibbsState {
  std::size_t num_topics = 0;
  std::size_t vocab_size = 0;
  std::vector<std::vector<TermId>> words;  // tokens per document, counts expanded
  std::vector<std::vector<TopicId>> z;     // same shape as words

  std::vector<std::int64_t> word_topic;   // vocab_size x num_topics
  std::vector<std::int64_t> doc_topic;    // documents x num_topics
  std::vector<std::int64_t> topic_total;  // num_topics
  std::vector<std::int64_t> doc_total;    // documents

  Rng rng;

  std::size_t num_documents() const { return words.size(); }
  std::size_t num_tokens() const;

  std::int64_t& n_word_topic(TermId v, TopicId j) { return word_topic[v * num_topics + j]; }
  std::int64_t n_word_topic(TermId v, TopicId j) const { return word_topic[v * num_topics + j]; }
  std::int64_t& n_doc_topic(std::size_t d, TopicId j) { return doc_topic[d * num_topics + j]; }
  std::int64_t n_doc_topic(std::size_t d, TopicId j) const { return doc_topic[d * num_topics + j]; }

  /// Removes token (d, i) from all four tables. Its z value is left as is.
  void unassign(std::size_t d, std::size_t i);
  /// Sets z and adds token (d, i) to all four tables.
  void assign(std::size_t d, std::size_t i, TopicId topic);

  /// Recounts every table from z and compares. Throws DataError on mismatch.
  void audit() const;
};

/// Draws every z uniformly from the topics. Throws DataError on an empty
/// corpus and InvalidArgument on bad hyperparameters.
GibbsState init_state(const Corpus& corpus, const Hyperparams& hp);

/// Collapsed full conditional from raw counts, all of which must already
/// exclude the token being resampled.
///
/// word_topic[j]: times the token's term is assigned topic j
/// topic_total[j]: tokens assigned topic j across the corpus
/// doc_topic[j]: tokens of the token's document assigned topic j
/// doc_total: tokens of the document, excluding this one
///
/// Throws DataError if any count is negative.
std::vector<double> full_conditional(std::span<const std::int64_t> word_topic,
                                     std::span<const std::int64_t> topic_total,
                                     std::span<const std::int64_t> doc_topic,
                                     std::int64_t doc_total, std::size_t vocab_size,
                                     double alpha, double chi);

/// Full conditional for token (d, i). The caller must have unassigned the
/// token first.
std::vector<double> full_conditional(const GibbsState& state, const Hyperparams& hp,
                                     std::size_t d, std::size_t i);

/// One Gibbs pass over every token, document-major then token order.
void sweep(GibbsState& state, const Hyperparams& hp);

/// ln P(w|z) with topic-word distributions integrated out.
double log_likelihood(const GibbsState& state, const Hyperparams& hp);

struct LdaModel {
  Hyperparams hyperparams;
  Matrix phi;  // topics x vocabulary
  Matrix psi;  // documents x topics
  Vocabulary vocabulary;
  std::vector<std::string> document_ids;

  std::size_t num_topics() const { return phi.rows(); }
  std::size_t num_documents() const { return psi.rows(); }

  bool operator==(const LdaModel&) const = default;
};

/// Smoothed point estimates of phi and psi from the state's counts.
LdaModel estimate(const GibbsState& state, const Hyperparams& hp, const Corpus& corpus);

struct ChainTrace {
  std::size_t chain_id = 0;
  std::vector<std::size_t> iterations;
  std::vector<double> log_likelihood;

  std::size_t size() const { return iterations.size(); }
};

struct TrainOptions {
  /// Record ln P(w|z) after the initial state and every `trace_every`
  /// sweeps. 0 disables tracing.
  std::size_t trace_every = 10;
  std::size_t chain_id = 0;
  /// When > 0, phi and psi are averaged over the states at sweeps
  /// iterations, iterations - lag, ... that lie past the burn-in. 0 uses the
  /// final state alone.
  std::size_t average_lag = 0;
};

struct TrainResult {
  LdaModel model;
  ChainTrace trace;
};

TrainResult train(const Corpus& corpus, const Hyperparams& hp, const TrainOptions& options = {});

/// Runs `chains` independent chains concurrently. Chain c uses seed
/// hp.seed + c and chain id c. Results are in chain order.
std::vector<TrainResult> train_chains(const Corpus& corpus, const Hyperparams& hp,
                                      std::size_t chains, const TrainOptions& options = {});

struct ConvergenceReport {
  std::vector<std::size_t> iterations;
  std::vector<double> mean;
  std::vector<double> spread;    // max - min across chains
  std::vector<double> relative;  // spread / |mean|
  double threshold = 0.0;
  std::size_t window = 0;
  /// First recorded iteration from which `relative` stays at or below the
  /// threshold for `window` consecutive records.
  std::optional<std::size_t> converged_at;

  bool converged() const { return converged_at.has_value(); }
};

/// Cross-chain agreement of ln P(w|z) traces. Requires >= 2 chains recorded
/// at identical iterations and window >= 1.
ConvergenceReport convergence_report(std::span<const ChainTrace> traces, std::size_t window,
                                     double threshold = 0.02);

using WeightedTerm = std::pair<std::string, double>;

/// The k most probable terms of a topic, ties broken by ascending term id.
std::vector<WeightedTerm> top_words(const LdaModel& model, std::size_t topic, std::size_t k);

/// Term ids of the same ranking.
std::vector<TermId> top_word_ids(const LdaModel& model, std::size_t topic, std::size_t k);

}  // namespace topicforge
