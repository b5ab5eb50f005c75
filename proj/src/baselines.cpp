#include "topicforge/baselines.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "math_util.hpp"
#include "topicforge/error.hpp"
#include "topicforge/text_io.hpp"

namespace topicforge {

UnigramModel fit_unigram(const Corpus& corpus) {
  corpus.validate();
  UnigramModel model;
  model.n.assign(corpus.vocabulary.size(), 0);
  for (const auto& d : corpus.documents)
    for (const auto& e : d.entries) model.n[e.term] += e.count;
  const auto total = static_cast<double>(corpus.total_tokens());
  model.p.reserve(model.n.size());
  for (auto c : model.n) model.p.push_back(static_cast<double>(c) / total);
  return model;
}

LogProb unigram_log_prob(const UnigramModel& model, const Document& doc) {
  LogProb out;
  for (const auto& e : doc.entries) {
    if (e.term >= model.p.size()) throw InvalidArgument("term outside the unigram vocabulary");
    const double p = model.p[e.term];
    if (!(p > 0.0)) {
      out.impossible = true;
      out.value = -std::numeric_limits<double>::infinity();
      return out;
    }
    out.value += static_cast<double>(e.count) * std::log(p);
  }
  return out;
}

LogProb unigram_log_prob(const UnigramModel& model, const Corpus& corpus) {
  LogProb out;
  for (const auto& d : corpus.documents) {
    const LogProb lp = unigram_log_prob(model, d);
    if (lp.impossible) return lp;
    out.value += lp.value;
  }
  return out;
}

LogProb multinomial_log_pmf(const UnigramModel& model, const Document& doc) {
  LogProb out = unigram_log_prob(model, doc);
  if (out.impossible) return out;
  double coefficient = detail::log_gamma(static_cast<double>(doc.token_count()) + 1.0);
  for (const auto& e : doc.entries) coefficient -= detail::log_gamma(static_cast<double>(e.count) + 1.0);
  out.value += coefficient;
  return out;
}

double TfidfTable::idf(TermId term) const {
  const auto df = document_frequency.at(term);
  if (df == 0) return 0.0;
  return std::log(static_cast<double>(num_documents) / static_cast<double>(df));
}

TfidfTable fit_tfidf(const Corpus& corpus) {
  corpus.validate();
  TfidfTable table;
  table.num_documents = corpus.documents.size();
  table.document_frequency.assign(corpus.vocabulary.size(), 0);
  for (const auto& d : corpus.documents)
    for (const auto& e : d.entries) ++table.document_frequency[e.term];

  table.weights.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    auto& row = table.weights.emplace_back();
    row.reserve(d.entries.size());
    for (const auto& e : d.entries)
      row.push_back({e.term, static_cast<double>(e.count) * table.idf(e.term)});
  }
  return table;
}

std::vector<WeightedTermId> tfidf_top_terms(const TfidfTable& table, std::size_t d, std::size_t k) {
  if (d >= table.weights.size()) throw InvalidArgument("unknown document " + std::to_string(d));
  if (k < 1) throw InvalidArgument("k must be >= 1");
  std::vector<WeightedTermId> terms;
  for (const auto& w : table.weights[d])
    if (w.weight > 0.0) terms.push_back(w);
  const std::size_t n = std::min(k, terms.size());
  std::partial_sort(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(n), terms.end(),
                    [](const WeightedTermId& a, const WeightedTermId& b) {
                      return a.weight > b.weight || (a.weight == b.weight && a.term < b.term);
                    });
  terms.resize(n);
  return terms;
}

void write_tfidf_tsv(const std::filesystem::path& path, const Corpus& corpus,
                     const TfidfTable& table, std::size_t k) {
  std::string out = "doc_id\trank\tterm\tweight\n";
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto top = tfidf_top_terms(table, d, k);
    for (std::size_t r = 0; r < top.size(); ++r) {
      out += corpus.documents[d].id;
      out += '\t';
      out += std::to_string(r + 1);
      out += '\t';
      out += corpus.vocabulary.term(top[r].term);
      out += '\t';
      out += format_double(top[r].weight);
      out += '\n';
    }
  }
  write_file(path, out);
}

TfidfRankings read_tfidf_tsv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "doc_id\trank\tterm\tweight")
    throw ParseError(1, "bad tfidf header");
  TfidfRankings rankings;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto cols = split(lines[k], '\t');
    if (cols.size() != 4) throw ParseError(k + 1, "tfidf rows need 4 columns");
    std::size_t rank = 0;
    auto [ptr, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), rank);
    if (ec != std::errc{} || ptr != cols[1].data() + cols[1].size() || rank == 0)
      throw ParseError(k + 1, "bad rank");
    auto& terms = rankings.terms[std::string(cols[0])];
    if (rank != terms.size() + 1) throw ParseError(k + 1, "ranks must run 1, 2, ... per document");
    terms.emplace_back(cols[2]);
    rankings.max_rank = std::max(rankings.max_rank, rank);
  }
  return rankings;
}

}  // namespace topicforge
