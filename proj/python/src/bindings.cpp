#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "topicforge/baselines.hpp"
#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"
#include "topicforge/evaluation.hpp"
#include "topicforge/lda.hpp"
#include "topicforge/lda_io.hpp"
#include "topicforge/porter_stemmer.hpp"
#include "topicforge/sparse_format.hpp"
#include "topicforge/stopwords.hpp"
#include "topicforge/synth.hpp"
#include "topicforge/wordcount.hpp"

namespace py = pybind11;
using namespace topicforge;

namespace {

py::array_t<double> to_array(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

StopwordList stopwords_or_default(const std::optional<std::filesystem::path>& path) {
  return path ? StopwordList::load(*path) : StopwordList::english();
}

using Entries = std::vector<std::pair<TermId, std::uint32_t>>;

Entries entries_of(const Document& d) {
  Entries out;
  for (auto e : d.entries) out.emplace_back(e.term, e.count);
  return out;
}

Document make_document(std::string id, const Entries& entries) {
  Document d{std::move(id), {}};
  for (auto [t, c] : entries) d.entries.push_back({t, c});
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "topicforge native core";

  // Translators run newest first, so subclasses are registered last.
  auto base = py::register_exception<Error>(m, "TopicforgeError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  auto data = py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", data.ptr());

  m.def("porter_stem", [](const std::string& w) { return porter_stem(w); }, py::arg("word"));
  m.def(
      "preprocess",
      [](const std::string& text, std::optional<std::filesystem::path> stopwords) {
        return preprocess(text, stopwords_or_default(stopwords));
      },
      py::arg("text"), py::arg("stopwords") = py::none(),
      "Lowercase, tokenize, drop stopwords and stem. `stopwords` is an optional list file.");

  py::class_<Vocabulary>(m, "Vocabulary")
      .def(py::init<>())
      .def(py::init<std::vector<std::string>>(), py::arg("terms"))
      .def("add", [](Vocabulary& v, const std::string& t) { return v.add(t); })
      .def("find", [](const Vocabulary& v, const std::string& t) { return v.find(t); })
      .def("term", &Vocabulary::term)
      .def_property_readonly("terms", &Vocabulary::terms)
      .def("__len__", &Vocabulary::size);

  py::class_<Document>(m, "Document")
      .def(py::init(&make_document), py::arg("id"), py::arg("entries"))
      .def_readwrite("id", &Document::id)
      .def_property_readonly("entries", &entries_of)
      .def("token_count", &Document::token_count);

  py::class_<Corpus>(m, "Corpus")
      .def_readonly("vocabulary", &Corpus::vocabulary)
      .def_readonly("documents", &Corpus::documents)
      .def("total_tokens", &Corpus::total_tokens)
      .def("validate", &Corpus::validate);

  m.def(
      "build_corpus",
      [](const std::vector<std::pair<std::string, std::vector<std::string>>>& docs) {
        std::vector<TokenizedDocument> tokenized;
        for (const auto& [id, tokens] : docs) tokenized.push_back({id, tokens});
        auto result = build_corpus(tokenized);
        return std::make_pair(std::move(result.corpus), std::move(result.dropped));
      },
      py::arg("documents"),
      "Build a corpus from (id, tokens) pairs. Returns (corpus, dropped ids).");
  m.def("read_corpus",
        [](const std::filesystem::path& dir) { return read_corpus(CorpusFiles::in_directory(dir)); },
        py::arg("directory"));
  m.def(
      "encode_sparse", [](const Entries& e) { return encode_sparse(make_document("", e)); },
      py::arg("entries"));
  m.def(
      "decode_sparse", [](const std::string& line) { return entries_of(decode_sparse(line)); },
      py::arg("line"));

  m.def(
      "wordcount",
      [](const std::vector<std::string>& tokens, std::size_t shards) {
        auto result = parallel_wordcount(tokens, shards);
        return result.counts.entries();
      },
      py::arg("tokens"), py::arg("shards") = 1, py::call_guard<py::gil_scoped_release>());

  py::class_<Hyperparams>(m, "Hyperparams")
      .def(py::init([](std::size_t topics, std::optional<double> alpha, double chi, std::size_t burn_in,
                       std::size_t iterations, std::uint64_t seed) {
             Hyperparams hp = Hyperparams::defaults(topics);
             if (alpha) hp.alpha = *alpha;
             hp.chi = chi;
             hp.burn_in = burn_in;
             hp.iterations = iterations;
             hp.seed = seed;
             hp.validate();
             return hp;
           }),
           py::arg("topics"), py::arg("alpha") = py::none(), py::arg("chi") = 0.01,
           py::arg("burn_in") = 500, py::arg("iterations") = 1000, py::arg("seed") = 0)
      .def_readwrite("topics", &Hyperparams::topics)
      .def_readwrite("alpha", &Hyperparams::alpha)
      .def_readwrite("chi", &Hyperparams::chi)
      .def_readwrite("burn_in", &Hyperparams::burn_in)
      .def_readwrite("iterations", &Hyperparams::iterations)
      .def_readwrite("seed", &Hyperparams::seed);

  py::class_<LdaModel>(m, "LdaModel")
      .def_readonly("hyperparams", &LdaModel::hyperparams)
      .def_property_readonly("phi", [](const LdaModel& lm) { return to_array(lm.phi); })
      .def_property_readonly("psi", [](const LdaModel& lm) { return to_array(lm.psi); })
      .def_readonly("vocabulary", &LdaModel::vocabulary)
      .def_readonly("document_ids", &LdaModel::document_ids)
      .def_property_readonly("num_topics", &LdaModel::num_topics);

  py::class_<ChainTrace>(m, "ChainTrace")
      .def_readonly("chain_id", &ChainTrace::chain_id)
      .def_readonly("iterations", &ChainTrace::iterations)
      .def_readonly("log_likelihood", &ChainTrace::log_likelihood);

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("iterations", &ConvergenceReport::iterations)
      .def_readonly("mean", &ConvergenceReport::mean)
      .def_readonly("spread", &ConvergenceReport::spread)
      .def_readonly("relative", &ConvergenceReport::relative)
      .def_readonly("converged_at", &ConvergenceReport::converged_at);

  m.def(
      "train",
      [](const Corpus& c, const Hyperparams& hp, std::size_t trace_every, std::size_t average_lag) {
        auto r = train(c, hp, {.trace_every = trace_every, .chain_id = 0, .average_lag = average_lag});
        return std::make_pair(std::move(r.model), std::move(r.trace));
      },
      py::arg("corpus"), py::arg("hyperparams"), py::arg("trace_every") = 10,
      py::arg("average_lag") = 0, py::call_guard<py::gil_scoped_release>(),
      "Run one Gibbs chain. Returns (model, trace).");
  m.def(
      "train_chains",
      [](const Corpus& c, const Hyperparams& hp, std::size_t chains, std::size_t trace_every) {
        std::vector<std::pair<LdaModel, ChainTrace>> out;
        for (auto& r : train_chains(c, hp, chains, {.trace_every = trace_every}))
          out.emplace_back(std::move(r.model), std::move(r.trace));
        return out;
      },
      py::arg("corpus"), py::arg("hyperparams"), py::arg("chains"), py::arg("trace_every") = 10,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "convergence_report",
      [](const std::vector<ChainTrace>& traces, std::size_t window, double threshold) {
        return convergence_report(traces, window, threshold);
      },
      py::arg("traces"), py::arg("window") = 5, py::arg("threshold") = 0.02);
  m.def(
      "full_conditional",
      [](const std::vector<std::int64_t>& word_topic, const std::vector<std::int64_t>& topic_total,
         const std::vector<std::int64_t>& doc_topic, std::int64_t doc_total, std::size_t vocab_size,
         double alpha, double chi) {
        return full_conditional(word_topic, topic_total, doc_topic, doc_total, vocab_size, alpha, chi);
      },
      py::arg("word_topic"), py::arg("topic_total"), py::arg("doc_topic"), py::arg("doc_total"),
      py::arg("vocab_size"), py::arg("alpha"), py::arg("chi"));
  m.def("top_words", &top_words, py::arg("model"), py::arg("topic"), py::arg("k"));
  m.def("write_model", py::overload_cast<const std::filesystem::path&, const LdaModel&>(&write_model),
        py::arg("path"), py::arg("model"));
  m.def("read_model", py::overload_cast<const std::filesystem::path&>(&read_model), py::arg("path"));

  py::class_<UnigramModel>(m, "UnigramModel")
      .def_readonly("p", &UnigramModel::p)
      .def_readonly("n", &UnigramModel::n);
  m.def("fit_unigram", &fit_unigram, py::arg("corpus"));
  m.def(
      "unigram_log_prob",
      [](const UnigramModel& u, const Corpus& c) { return unigram_log_prob(u, c).value; },
      py::arg("model"), py::arg("corpus"), "Corpus log-probability; -inf for unseen terms.");

  py::class_<TfidfTable>(m, "TfidfTable")
      .def_property_readonly("weights",
                             [](const TfidfTable& t) {
                               std::vector<std::vector<std::pair<TermId, double>>> out;
                               for (const auto& row : t.weights) {
                                 auto& r = out.emplace_back();
                                 for (auto w : row) r.emplace_back(w.term, w.weight);
                               }
                               return out;
                             })
      .def_readonly("document_frequency", &TfidfTable::document_frequency)
      .def_readonly("num_documents", &TfidfTable::num_documents)
      .def("idf", &TfidfTable::idf);
  m.def("fit_tfidf", &fit_tfidf, py::arg("corpus"));
  m.def(
      "tfidf_top_terms",
      [](const TfidfTable& t, std::size_t d, std::size_t k) {
        std::vector<std::pair<TermId, double>> out;
        for (auto w : tfidf_top_terms(t, d, k)) out.emplace_back(w.term, w.weight);
        return out;
      },
      py::arg("table"), py::arg("document"), py::arg("k"));
  m.def("tfidf_term_lists", &tfidf_term_lists, py::arg("table"), py::arg("vocabulary"), py::arg("k"));

  py::class_<TargetList>(m, "TargetList")
      .def(py::init<std::vector<std::string>>(), py::arg("terms"))
      .def_static(
          "from_raw",
          [](const std::vector<std::string>& words, std::optional<std::filesystem::path> sw) {
            return TargetList::from_raw(words, stopwords_or_default(sw));
          },
          py::arg("words"), py::arg("stopwords") = py::none())
      .def_property_readonly("terms", &TargetList::terms)
      .def("prefix", &TargetList::prefix)
      .def("__len__", &TargetList::size);

  py::class_<Precision>(m, "Precision")
      .def_readonly("n_correct", &Precision::n_correct)
      .def_readonly("n_total", &Precision::n_total)
      .def_readonly("value", &Precision::value);
  m.def(
      "precision",
      [](const std::vector<TermSet>& doc_terms, const TermSet& targets) {
        return precision(doc_terms, targets);
      },
      py::arg("doc_terms"), py::arg("targets"));

  py::class_<EvalRow>(m, "EvalRow")
      .def_readonly("model", &EvalRow::model)
      .def_readonly("tw", &EvalRow::tw)
      .def_readonly("tg", &EvalRow::tg)
      .def_readonly("precision", &EvalRow::precision);
  m.def(
      "sweep_report",
      [](const LdaModel& model, const TfidfTermLists& lists, const TargetList& targets,
         std::vector<std::size_t> tw_values, std::size_t tg_min, std::optional<std::size_t> tg_max,
         std::size_t topics_per_doc) {
        SweepConfig config{std::move(tw_values), tg_min, tg_max.value_or(targets.size()), topics_per_doc};
        return sweep_report(model, lists, targets, config).rows;
      },
      py::arg("model"), py::arg("tfidf_lists"), py::arg("targets"),
      py::arg("tw_values") = std::vector<std::size_t>{5, 10, 15}, py::arg("tg_min") = 1,
      py::arg("tg_max") = py::none(), py::arg("topics_per_doc") = 1);

  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("topics", &SynthConfig::topics)
      .def_readwrite("documents", &SynthConfig::documents)
      .def_readwrite("doc_length", &SynthConfig::doc_length)
      .def_readwrite("vocab", &SynthConfig::vocab)
      .def_readwrite("topic_concentration", &SynthConfig::topic_concentration)
      .def_readwrite("doc_concentration", &SynthConfig::doc_concentration)
      .def_readwrite("seed", &SynthConfig::seed);
  m.def(
      "generate_synthetic",
      [](const SynthConfig& config) {
        auto s = generate_synthetic(config);
        std::vector<std::pair<std::string, std::vector<std::string>>> docs;
        for (auto& d : s.documents) docs.emplace_back(std::move(d.id), std::move(d.tokens));
        py::dict out;
        out["words"] = s.words;
        out["phi"] = to_array(s.phi);
        out["psi"] = to_array(s.psi);
        out["documents"] = docs;
        return out;
      },
      py::arg("config"),
      "Sample a corpus from planted topics. Returns a dict of words, phi, psi and documents.");

}
