#include "topicforge/lda.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "math_util.hpp"
#include "topicforge/error.hpp"

namespace topicforge {

namespace {

using detail::log_gamma;

// Normalized full conditional written into `out` (size T).
void conditional_into(const std::int64_t* word_topic, const std::int64_t* topic_total,
                      const std::int64_t* doc_topic, std::int64_t doc_total, std::size_t topics,
                      double vocab_chi, double topic_alpha, double alpha, double chi,
                      double* out) {
  const double doc_denominator = static_cast<double>(doc_total) + topic_alpha;
  double sum = 0.0;
  for (std::size_t j = 0; j < topics; ++j) {
    const double word_part = (static_cast<double>(word_topic[j]) + chi) /
                             (static_cast<double>(topic_total[j]) + vocab_chi);
    const double doc_part = (static_cast<double>(doc_topic[j]) + alpha) / doc_denominator;
    out[j] = word_part * doc_part;
    sum += out[j];
  }
  for (std::size_t j = 0; j < topics; ++j) out[j] /= sum;
}

// Inverse CDF: first index whose cumulative mass exceeds u.
TopicId sample_index(const double* p, std::size_t n, double u) {
  double cumulative = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    cumulative += p[j];
    if (u < cumulative) return static_cast<TopicId>(j);
  }
  return static_cast<TopicId>(n - 1);
}

}  // namespace

Hyperparams Hyperparams::defaults(std::size_t topics) {
  Hyperparams hp;
  hp.topics = topics;
  hp.alpha = 50.0 / static_cast<double>(std::max<std::size_t>(topics, 1));
  hp.chi = 0.01;
  hp.burn_in = 500;
  hp.iterations = 1000;
  return hp;
}

void Hyperparams::validate() const {
  if (topics < 1) throw InvalidArgument("topics must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be > 0");
  if (!(chi > 0.0) || !std::isfinite(chi)) throw InvalidArgument("chi must be > 0");
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (iterations < burn_in) throw InvalidArgument("iterations must be >= burn-in");
}

std::size_t GibbsState::num_tokens() const {
  std::size_t n = 0;
  for (const auto& w : words) n += w.size();
  return n;
}

void GibbsState::unassign(std::size_t d, std::size_t i) {
  const TermId v = words[d][i];
  const TopicId j = z[d][i];
  --n_word_topic(v, j);
  --n_doc_topic(d, j);
  --topic_total[j];
  --doc_total[d];
}

void GibbsState::assign(std::size_t d, std::size_t i, TopicId topic) {
  const TermId v = words[d][i];
  z[d][i] = topic;
  ++n_word_topic(v, topic);
  ++n_doc_topic(d, topic);
  ++topic_total[topic];
  ++doc_total[d];
}

void GibbsState::audit() const {
  const std::size_t T = num_topics;
  std::vector<std::int64_t> wt(vocab_size * T, 0), dt(num_documents() * T, 0), tt(T, 0),
      dd(num_documents(), 0);
  if (z.size() != words.size()) throw DataError("z and words disagree on document count");
  for (std::size_t d = 0; d < words.size(); ++d) {
    if (z[d].size() != words[d].size()) throw DataError("z and words disagree on document length");
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const TermId v = words[d][i];
      const TopicId j = z[d][i];
      if (j >= T || v >= vocab_size) throw DataError("assignment out of range");
      ++wt[v * T + j];
      ++dt[d * T + j];
      ++tt[j];
      ++dd[d];
    }
  }
  if (wt != word_topic) throw DataError("word-topic counts do not match assignments");
  if (dt != doc_topic) throw DataError("document-topic counts do not match assignments");
  if (tt != topic_total) throw DataError("topic totals do not match assignments");
  if (dd != doc_total) throw DataError("document totals do not match assignments");
}

GibbsState init_state(const Corpus& corpus, const Hyperparams& hp) {
  hp.validate();
  corpus.validate();

  GibbsState state;
  const std::size_t T = hp.topics;
  state.num_topics = T;
  state.vocab_size = corpus.vocabulary.size();
  state.rng.reseed(hp.seed);
  state.word_topic.assign(state.vocab_size * T, 0);
  state.doc_topic.assign(corpus.documents.size() * T, 0);
  state.topic_total.assign(T, 0);
  state.doc_total.assign(corpus.documents.size(), 0);
  state.words.reserve(corpus.documents.size());
  state.z.reserve(corpus.documents.size());

  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    state.words.push_back(expand_tokens(corpus.documents[d]));
    state.z.emplace_back(state.words.back().size(), 0);
    for (std::size_t i = 0; i < state.words[d].size(); ++i)
      state.assign(d, i, static_cast<TopicId>(state.rng.below(T)));
  }
  return state;
}

std::vector<double> full_conditional(std::span<const std::int64_t> word_topic,
                                     std::span<const std::int64_t> topic_total,
                                     std::span<const std::int64_t> doc_topic,
                                     std::int64_t doc_total, std::size_t vocab_size,
                                     double alpha, double chi) {
  const std::size_t T = topic_total.size();
  if (T == 0 || word_topic.size() != T || doc_topic.size() != T)
    throw InvalidArgument("count vectors must all have one entry per topic");
  if (vocab_size == 0) throw InvalidArgument("vocabulary size must be >= 1");
  if (!(alpha > 0.0) || !(chi > 0.0)) throw InvalidArgument("alpha and chi must be > 0");
  auto negative = [](std::int64_t c) { return c < 0; };
  if (doc_total < 0 || std::any_of(word_topic.begin(), word_topic.end(), negative) ||
      std::any_of(topic_total.begin(), topic_total.end(), negative) ||
      std::any_of(doc_topic.begin(), doc_topic.end(), negative))
    throw DataError("negative count: tables do not exclude exactly the current token");

  std::vector<double> p(T);
  conditional_into(word_topic.data(), topic_total.data(), doc_topic.data(), doc_total, T,
                   static_cast<double>(vocab_size) * chi, static_cast<double>(T) * alpha, alpha,
                   chi, p.data());
  return p;
}

std::vector<double> full_conditional(const GibbsState& state, const Hyperparams& hp,
                                     std::size_t d, std::size_t i) {
  if (d >= state.num_documents() || i >= state.words[d].size())
    throw InvalidArgument("token position out of range");
  const std::size_t T = state.num_topics;
  const TermId v = state.words[d][i];
  return full_conditional(std::span(state.word_topic).subspan(v * T, T), state.topic_total,
                          std::span(state.doc_topic).subspan(d * T, T), state.doc_total[d],
                          state.vocab_size, hp.alpha, hp.chi);
}

void sweep(GibbsState& state, const Hyperparams& hp) {
  const std::size_t T = state.num_topics;
  const double vocab_chi = static_cast<double>(state.vocab_size) * hp.chi;
  const double topic_alpha = static_cast<double>(T) * hp.alpha;
  std::vector<double> p(T);
  for (std::size_t d = 0; d < state.num_documents(); ++d) {
    const auto& doc_words = state.words[d];
    for (std::size_t i = 0; i < doc_words.size(); ++i) {
      state.unassign(d, i);
      conditional_into(&state.word_topic[doc_words[i] * T], state.topic_total.data(),
                       &state.doc_topic[d * T], state.doc_total[d], T, vocab_chi, topic_alpha,
                       hp.alpha, hp.chi, p.data());
      state.assign(d, i, sample_index(p.data(), T, state.rng.uniform()));
    }
  }
}

double log_likelihood(const GibbsState& state, const Hyperparams& hp) {
  const std::size_t T = state.num_topics;
  const double vocab_chi = static_cast<double>(state.vocab_size) * hp.chi;
  const double lg_chi = log_gamma(hp.chi);
  const double lg_vocab_chi = log_gamma(vocab_chi);
  double total = 0.0;
  for (std::size_t j = 0; j < T; ++j) {
    // Zero counts contribute lgamma(chi) - lgamma(chi); they are skipped so an
    // empty topic adds exactly 0.
    double topic = lg_vocab_chi - log_gamma(static_cast<double>(state.topic_total[j]) + vocab_chi);
    for (std::size_t v = 0; v < state.vocab_size; ++v) {
      const std::int64_t n = state.word_topic[v * T + j];
      if (n > 0) topic += log_gamma(static_cast<double>(n) + hp.chi) - lg_chi;
    }
    total += topic;
  }
  return total;
}

LdaModel estimate(const GibbsState& state, const Hyperparams& hp, const Corpus& corpus) {
  const std::size_t T = state.num_topics;
  const std::size_t V = state.vocab_size;
  const std::size_t D = state.num_documents();
  if (corpus.documents.size() != D || corpus.vocabulary.size() != V)
    throw InvalidArgument("state does not belong to this corpus");

  LdaModel model;
  model.hyperparams = hp;
  model.vocabulary = corpus.vocabulary;
  model.document_ids.reserve(D);
  for (const auto& d : corpus.documents) model.document_ids.push_back(d.id);

  model.phi = Matrix(T, V);
  const double vocab_chi = static_cast<double>(V) * hp.chi;
  for (std::size_t j = 0; j < T; ++j) {
    const double denom = static_cast<double>(state.topic_total[j]) + vocab_chi;
    for (std::size_t v = 0; v < V; ++v)
      model.phi(j, v) = (static_cast<double>(state.word_topic[v * T + j]) + hp.chi) / denom;
  }
  model.psi = Matrix(D, T);
  const double topic_alpha = static_cast<double>(T) * hp.alpha;
  for (std::size_t d = 0; d < D; ++d) {
    const double denom = static_cast<double>(state.doc_total[d]) + topic_alpha;
    for (std::size_t j = 0; j < T; ++j)
      model.psi(d, j) = (static_cast<double>(state.doc_topic[d * T + j]) + hp.alpha) / denom;
  }
  return model;
}

TrainResult train(const Corpus& corpus, const Hyperparams& hp, const TrainOptions& options) {
  GibbsState state = init_state(corpus, hp);

  TrainResult result;
  result.trace.chain_id = options.chain_id;
  auto record = [&](std::size_t iteration) {
    result.trace.iterations.push_back(iteration);
    result.trace.log_likelihood.push_back(log_likelihood(state, hp));
  };
  if (options.trace_every > 0) record(0);

  std::optional<LdaModel> sum;
  std::size_t samples = 0;
  for (std::size_t it = 1; it <= hp.iterations; ++it) {
    sweep(state, hp);
    if (options.trace_every > 0 && it % options.trace_every == 0) record(it);
    if (options.average_lag > 0 && it > hp.burn_in &&
        (hp.iterations - it) % options.average_lag == 0) {
      LdaModel m = estimate(state, hp, corpus);
      if (!sum) {
        sum = std::move(m);
      } else {
        for (std::size_t k = 0; k < m.phi.data().size(); ++k) sum->phi.data()[k] += m.phi.data()[k];
        for (std::size_t k = 0; k < m.psi.data().size(); ++k) sum->psi.data()[k] += m.psi.data()[k];
      }
      ++samples;
    }
  }

  if (sum && samples > 1) {
    const double scale = 1.0 / static_cast<double>(samples);
    for (auto& x : sum->phi.data()) x *= scale;
    for (auto& x : sum->psi.data()) x *= scale;
  }
  result.model = sum ? std::move(*sum) : estimate(state, hp, corpus);
  return result;
}

std::vector<TrainResult> train_chains(const Corpus& corpus, const Hyperparams& hp,
                                      std::size_t chains, const TrainOptions& options) {
  if (chains < 1) throw InvalidArgument("chains must be >= 1");
  hp.validate();
  corpus.validate();
  std::vector<TrainResult> results(chains);
  std::vector<std::exception_ptr> errors(chains);
  {
    std::vector<std::jthread> workers;
    for (std::size_t c = 0; c < chains; ++c) {
      workers.emplace_back([&, c] {
        try {
          Hyperparams chain_hp = hp;
          chain_hp.seed = hp.seed + c;
          TrainOptions chain_options = options;
          chain_options.chain_id = c;
          results[c] = train(corpus, chain_hp, chain_options);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

ConvergenceReport convergence_report(std::span<const ChainTrace> traces, std::size_t window,
                                     double threshold) {
  if (traces.size() < 2) throw InvalidArgument("convergence needs at least 2 chains");
  if (window < 1) throw InvalidArgument("window must be >= 1");
  const auto& first = traces.front();
  for (const auto& t : traces) {
    if (t.log_likelihood.size() != t.iterations.size())
      throw InvalidArgument("trace has mismatched iteration and value counts");
    if (t.iterations != first.iterations)
      throw InvalidArgument("traces must be recorded at the same iterations");
  }

  ConvergenceReport report;
  report.threshold = threshold;
  report.window = window;
  report.iterations = first.iterations;
  const std::size_t n = first.size();
  for (std::size_t k = 0; k < n; ++k) {
    double lo = traces[0].log_likelihood[k], hi = lo, sum = 0.0;
    for (const auto& t : traces) {
      lo = std::min(lo, t.log_likelihood[k]);
      hi = std::max(hi, t.log_likelihood[k]);
      sum += t.log_likelihood[k];
    }
    const double mean = sum / static_cast<double>(traces.size());
    const double spread = hi - lo;
    report.mean.push_back(mean);
    report.spread.push_back(spread);
    double rel;
    if (mean != 0.0) {
      rel = spread / std::abs(mean);
    } else {
      rel = spread == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    report.relative.push_back(rel);
  }

  std::size_t run = 0;
  for (std::size_t k = 0; k < n; ++k) {
    run = report.relative[k] <= threshold ? run + 1 : 0;
    if (run == window) {
      report.converged_at = report.iterations[k + 1 - window];
      break;
    }
  }
  return report;
}

std::vector<TermId> top_word_ids(const LdaModel& model, std::size_t topic, std::size_t k) {
  if (topic >= model.num_topics())
    throw InvalidArgument("topic " + std::to_string(topic) + " out of range");
  const std::size_t V = model.phi.cols();
  if (k < 1 || k > V) throw InvalidArgument("k must be in [1, vocabulary size]");
  const auto row = model.phi.row(topic);
  std::vector<TermId> ids(V);
  std::iota(ids.begin(), ids.end(), TermId{0});
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(),
                    [&](TermId a, TermId b) { return row[a] > row[b] || (row[a] == row[b] && a < b); });
  ids.resize(k);
  return ids;
}

std::vector<WeightedTerm> top_words(const LdaModel& model, std::size_t topic, std::size_t k) {
  std::vector<WeightedTerm> out;
  for (TermId id : top_word_ids(model, topic, k))
    out.emplace_back(model.vocabulary.term(id), model.phi(topic, id));
  return out;
}

}  // namespace topicforge
