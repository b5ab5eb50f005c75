#include "topicforge/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"
#include "topicforge/text_io.hpp"

namespace topicforge {

TargetList::TargetList(std::vector<std::string> terms) {
  for (auto& t : terms)
    if (std::find(terms_.begin(), terms_.end(), t) == terms_.end()) terms_.push_back(std::move(t));
}

TargetList TargetList::from_raw(std::span<const std::string> words, const StopwordList& stopwords) {
  std::vector<std::string> terms;
  for (const auto& w : words)
    for (auto& t : preprocess(w, stopwords)) terms.push_back(std::move(t));
  return TargetList(std::move(terms));
}

TargetList TargetList::load(const std::filesystem::path& path, const StopwordList& stopwords) {
  std::vector<std::string> words;
  for (auto& line : read_lines(path)) {
    if (line.empty() || line.front() == '#') continue;
    words.push_back(std::move(line));
  }
  return from_raw(words, stopwords);
}

TermSet TargetList::prefix(std::size_t g) const {
  if (g < 1 || g > terms_.size())
    throw InvalidArgument("target list prefix " + std::to_string(g) + " outside [1, " +
                          std::to_string(terms_.size()) + "]");
  return TermSet(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(g));
}

TermSet doc_topic_words_lda(const LdaModel& model, std::size_t d, std::size_t tw, std::size_t m) {
  if (d >= model.num_documents()) throw InvalidArgument("unknown document " + std::to_string(d));
  const std::size_t T = model.num_topics();
  if (m < 1 || m > T) throw InvalidArgument("topics per document must be in [1, T]");

  const auto mix = model.psi.row(d);
  std::vector<std::size_t> topics(T);
  std::iota(topics.begin(), topics.end(), std::size_t{0});
  std::stable_sort(topics.begin(), topics.end(),
                   [&](std::size_t a, std::size_t b) { return mix[a] > mix[b]; });

  // A |TW| beyond the vocabulary takes every term, as the TF-IDF lists do.
  const std::size_t k_words = std::min(tw, model.vocabulary.size());
  TermSet words;
  for (std::size_t k = 0; k < m; ++k)
    for (auto& [term, _] : top_words(model, topics[k], k_words)) words.insert(term);
  return words;
}

Precision precision(std::span<const TermSet> doc_terms, const TermSet& targets) {
  if (doc_terms.empty()) throw DataError("precision needs at least one document");
  Precision p;
  p.n_total = doc_terms.size();
  for (const auto& terms : doc_terms) {
    const bool hit = std::any_of(terms.begin(), terms.end(),
                                 [&](const std::string& t) { return targets.count(t) > 0; });
    if (hit) ++p.n_correct;
  }
  p.value = static_cast<double>(p.n_correct) / static_cast<double>(p.n_total);
  return p;
}

TfidfTermLists tfidf_term_lists(const TfidfTable& table, const Vocabulary& vocab, std::size_t k) {
  TfidfTermLists lists;
  lists.reserve(table.weights.size());
  for (std::size_t d = 0; d < table.weights.size(); ++d) {
    auto& list = lists.emplace_back();
    for (const auto& w : tfidf_top_terms(table, d, k)) list.push_back(vocab.term(w.term));
  }
  return lists;
}

EvalReport sweep_report(const LdaModel& model, const TfidfTermLists& tfidf_terms,
                        const TargetList& targets, const SweepConfig& config) {
  if (config.tg_min < 1 || config.tg_min > config.tg_max || config.tg_max > targets.size())
    throw InvalidArgument("|TG| range [" + std::to_string(config.tg_min) + ", " +
                          std::to_string(config.tg_max) + "] does not fit a target list of " +
                          std::to_string(targets.size()));
  if (config.tw_values.empty()) throw InvalidArgument("no |TW| values given");
  if (tfidf_terms.size() != model.num_documents())
    throw InvalidArgument("TF-IDF lists cover " + std::to_string(tfidf_terms.size()) +
                          " documents, the model " + std::to_string(model.num_documents()));

  const std::size_t D = model.num_documents();
  EvalReport report;
  auto add_rows = [&](const std::string& name, std::size_t tw, const std::vector<TermSet>& sets) {
    for (std::size_t g = config.tg_min; g <= config.tg_max; ++g)
      report.rows.push_back({name, tw, g, precision(sets, targets.prefix(g))});
  };

  for (std::size_t tw : config.tw_values) {
    std::vector<TermSet> sets;
    sets.reserve(D);
    for (std::size_t d = 0; d < D; ++d)
      sets.push_back(doc_topic_words_lda(model, d, tw, config.lda_topics_per_doc));
    add_rows("lda", tw, sets);
  }
  for (std::size_t tw : config.tw_values) {
    if (tw < 1) throw InvalidArgument("|TW| must be >= 1");
    std::vector<TermSet> sets;
    sets.reserve(D);
    for (const auto& list : tfidf_terms)
      sets.emplace_back(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(std::min(tw, list.size())));
    add_rows("tfidf", tw, sets);
  }
  return report;
}

void write_report_csv(const std::filesystem::path& path, const EvalReport& report) {
  std::string out = "model,tw,tg,n_correct,n_total,precision\n";
  for (const auto& r : report.rows) {
    out += r.model;
    out += ',' + std::to_string(r.tw);
    out += ',' + std::to_string(r.tg);
    out += ',' + std::to_string(r.precision.n_correct);
    out += ',' + std::to_string(r.precision.n_total);
    out += ',' + format_double(r.precision.value);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace topicforge
