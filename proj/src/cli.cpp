#include "topicforge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <ostream>

#include "topicforge/baselines.hpp"
#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"
#include "topicforge/evaluation.hpp"
#include "topicforge/lda.hpp"
#include "topicforge/lda_io.hpp"
#include "topicforge/sparse_format.hpp"
#include "topicforge/synth.hpp"
#include "topicforge/text_io.hpp"
#include "topicforge/wordcount.hpp"

namespace topicforge {
namespace fs = std::filesystem;

namespace {

std::size_t parse_size(std::string_view s, const std::string& flag) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidArgument(flag + ": '" + std::string(s) + "' is not a non-negative integer");
  return v;
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (auto part : split(text, ',')) out.push_back(parse_size(part, flag));
  return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, const std::string& flag) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_size(text, flag);
    return {v, v};
  }
  return {parse_size(std::string_view(text).substr(0, dots), flag),
          parse_size(std::string_view(text).substr(dots + 2), flag)};
}

StopwordList load_stopwords(const std::string& path) {
  return path.empty() ? StopwordList::english() : StopwordList::load(path);
}

CorpusFiles corpus_files(const std::string& corpus, const std::string& vocab,
                         const std::string& manifest) {
  auto files = CorpusFiles::beside(corpus);
  if (!vocab.empty()) files.vocabulary = vocab;
  if (!manifest.empty()) files.manifest = manifest;
  return files;
}

struct PreprocessArgs {
  std::string input, out_dir, stopwords;
  bool strip_headers = false;
  std::size_t threads = 1;
};

struct WordcountArgs {
  std::string input, out, vocab, stopwords;
  std::size_t shards = 1;
  bool strip_headers = false;
};

struct SynthArgs {
  SynthConfig config;
  std::string out_dir;
};

struct TrainArgs {
  std::size_t topics = 0;
  std::optional<double> alpha;
  double chi = 0.01;
  std::size_t iters = 1000, burn_in = 500, chains = 1, trace_every = 10, average_lag = 0;
  std::size_t window = 5;
  double threshold = 0.02;
  std::uint64_t seed = 0;
  std::string corpus, out, trace, vocab, manifest;
};

struct TopicsArgs {
  std::string model, out;
  std::size_t top_k = 15;
};

struct TfidfArgs {
  std::string corpus, out, vocab, manifest;
  std::size_t top_k = 15;
};

struct EvalArgs {
  std::string model, tfidf, targets, out, stopwords;
  std::string tw = "5,10,15", tg = "1..15";
  std::size_t topics_per_doc = 1;
};

void cmd_preprocess(const PreprocessArgs& a, std::ostream& out) {
  const auto stopwords = load_stopwords(a.stopwords);
  const auto ingested = ingest(a.input, {a.strip_headers});
  const auto tokenized = preprocess_documents(ingested.documents, stopwords, a.threads);
  auto built = build_corpus(tokenized);

  std::vector<ManifestEntry> manifest;
  for (const auto& d : built.corpus.documents)
    manifest.push_back({ManifestEntry::Status::kept, d.id, ""});
  for (const auto& id : built.dropped)
    manifest.push_back({ManifestEntry::Status::dropped, id, "no tokens after preprocessing"});
  for (const auto& f : ingested.failures)
    manifest.push_back({ManifestEntry::Status::failed, f.id, f.message});

  fs::create_directories(a.out_dir);
  write_corpus(CorpusFiles::in_directory(a.out_dir), built.corpus, manifest);
  out << "documents " << built.corpus.documents.size() << " dropped " << built.dropped.size()
      << " failed " << ingested.failures.size() << " vocabulary "
      << built.corpus.vocabulary.size() << " tokens " << built.corpus.total_tokens() << '\n';
}

void cmd_wordcount(const WordcountArgs& a, std::ostream& out) {
  if (a.shards < 1) throw InvalidArgument("--shards must be >= 1");
  std::vector<std::string> tokens;
  if (fs::is_directory(a.input)) {
    const auto stopwords = load_stopwords(a.stopwords);
    for (const auto& doc : ingest(a.input, {a.strip_headers}).documents)
      for (auto& t : preprocess(doc.body, stopwords)) tokens.push_back(std::move(t));
  } else {
    const Corpus corpus = read_corpus(corpus_files(a.input, a.vocab, ""));
    for (const auto& d : corpus.documents)
      for (const auto& e : d.entries)
        tokens.insert(tokens.end(), e.count, corpus.vocabulary.term(e.term));
  }
  const auto result = parallel_wordcount(tokens, a.shards);
  write_counts_tsv(a.out, result.counts);
  const auto& t = result.timing;
  out << "tokens " << t.tokens << " unique " << result.counts.size() << " shards " << t.shards
      << " map_seconds " << t.map_seconds << " reduce_seconds " << t.reduce_seconds
      << " total_seconds " << t.total_seconds << '\n';
}

void cmd_synth(const SynthArgs& a, std::ostream& out) {
  const auto synth = generate_synthetic(a.config);
  const fs::path dir = a.out_dir;
  write_synthetic(dir / "docs", synth);
  write_planted_phi(dir / "planted_phi.tsv", synth);
  out << "wrote " << synth.documents.size() << " documents to " << (dir / "docs").string() << '\n';
}

void cmd_train(const TrainArgs& a, std::ostream& out) {
  if (a.topics < 1) throw InvalidArgument("--topics must be >= 1");
  if (a.chains < 1) throw InvalidArgument("--chains must be >= 1");
  Hyperparams hp = Hyperparams::defaults(a.topics);
  if (a.alpha) hp.alpha = *a.alpha;
  hp.chi = a.chi;
  hp.iterations = a.iters;
  hp.burn_in = a.burn_in;
  hp.seed = a.seed;
  hp.validate();

  const Corpus corpus = read_corpus(corpus_files(a.corpus, a.vocab, a.manifest));
  TrainOptions options;
  options.trace_every = a.trace_every;
  options.average_lag = a.average_lag;
  const auto results = train_chains(corpus, hp, a.chains, options);

  write_model(a.out, results.front().model);
  std::vector<ChainTrace> traces;
  for (const auto& r : results) traces.push_back(r.trace);
  const std::string trace_path = a.trace.empty() ? a.out + ".trace.csv" : a.trace;
  if (a.trace_every > 0) write_trace_csv(trace_path, traces);

  out << "trained " << a.chains << " chain(s), topics " << hp.topics << ", alpha "
      << format_double(hp.alpha) << ", chi " << format_double(hp.chi) << ", iterations "
      << hp.iterations << '\n';
  if (a.chains >= 2 && a.trace_every > 0) {
    const auto report = convergence_report(traces, a.window, a.threshold);
    if (report.converged()) {
      out << "chains agree within " << a.threshold << " of |mean| from iteration "
          << *report.converged_at << '\n';
    } else {
      out << "chains did not converge (final relative spread "
          << format_double(report.relative.back()) << ")\n";
    }
  }
}

void cmd_topics(const TopicsArgs& a, std::ostream& out) {
  const LdaModel model = read_model(fs::path(a.model));
  const std::size_t k = std::min(a.top_k, model.vocabulary.size());
  std::string text = "topic\trank\tterm\tprobability\n";
  for (std::size_t j = 0; j < model.num_topics(); ++j) {
    const auto words = top_words(model, j, k);
    for (std::size_t r = 0; r < words.size(); ++r)
      text += std::to_string(j) + '\t' + std::to_string(r + 1) + '\t' + words[r].first + '\t' +
              format_double(words[r].second) + '\n';
  }
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
}

void cmd_tfidf(const TfidfArgs& a, std::ostream& out) {
  if (a.top_k < 1) throw InvalidArgument("--top-k must be >= 1");
  const Corpus corpus = read_corpus(corpus_files(a.corpus, a.vocab, a.manifest));
  const auto table = fit_tfidf(corpus);
  write_tfidf_tsv(a.out, corpus, table, a.top_k);
  out << "tfidf for " << corpus.documents.size() << " documents written to " << a.out << '\n';
}

void cmd_eval(const EvalArgs& a, std::ostream& out) {
  SweepConfig config;
  config.tw_values = parse_list(a.tw, "--tw");
  for (auto tw : config.tw_values)
    if (tw < 1) throw InvalidArgument("--tw values must be >= 1");
  std::tie(config.tg_min, config.tg_max) = parse_range(a.tg, "--tg");
  config.lda_topics_per_doc = a.topics_per_doc;

  const LdaModel model = read_model(fs::path(a.model));
  const auto rankings = read_tfidf_tsv(a.tfidf);
  const auto targets = TargetList::load(a.targets, load_stopwords(a.stopwords));
  if (config.tg_max > targets.size())
    throw InvalidArgument("--tg upper bound " + std::to_string(config.tg_max) +
                          " exceeds the " + std::to_string(targets.size()) + " target terms");

  const std::size_t max_tw = *std::max_element(config.tw_values.begin(), config.tw_values.end());
  TfidfTermLists lists;
  for (const auto& id : model.document_ids) {
    auto it = rankings.terms.find(id);
    lists.push_back(it == rankings.terms.end() ? std::vector<std::string>{} : it->second);
  }
  if (max_tw > rankings.max_rank &&
      std::any_of(lists.begin(), lists.end(),
                  [&](const auto& l) { return l.size() == rankings.max_rank; }))
    throw DataError(a.tfidf + " holds at most " + std::to_string(rankings.max_rank) +
                    " terms per document; rerun tfidf with --top-k >= " + std::to_string(max_tw));

  const auto report = sweep_report(model, lists, targets, config);
  write_report_csv(a.out, report);
  out << "wrote " << report.rows.size() << " rows to " << a.out << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"topicforge: text corpora to LDA topics, with TF-IDF baselines and evaluation",
               "topicforge"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* preprocess_cmd = app.add_subcommand("preprocess", "Tokenize, filter and stem a text directory");
  preprocess_cmd->add_option("--input", pre.input, "Directory of text files")->required();
  preprocess_cmd->add_option("--out-dir", pre.out_dir, "Writes corpus.txt, vocab.txt, manifest.tsv")
      ->required();
  preprocess_cmd->add_flag("--strip-headers", pre.strip_headers, "Drop a leading email header block");
  preprocess_cmd->add_option("--stopwords", pre.stopwords, "Stopword file (default: bundled English)");
  preprocess_cmd->add_option("--threads", pre.threads, "Preprocessing workers")->check(CLI::PositiveNumber);

  WordcountArgs wc;
  auto* wordcount_cmd = app.add_subcommand("wordcount", "Sharded map/reduce word count");
  wordcount_cmd->add_option("--shards", wc.shards, "Number of shards")->required();
  wordcount_cmd->add_option("--input", wc.input, "Corpus file or text directory")->required();
  wordcount_cmd->add_option("--out", wc.out, "Output TSV")->required();
  wordcount_cmd->add_option("--vocab", wc.vocab, "Vocabulary for a corpus file input");
  wordcount_cmd->add_option("--stopwords", wc.stopwords, "Stopword file for a text directory input");
  wordcount_cmd->add_flag("--strip-headers", wc.strip_headers, "Drop email headers (text input)");

  SynthArgs syn;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with planted topics");
  synth_cmd->add_option("--topics", syn.config.topics)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--docs", syn.config.documents)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--doc-len", syn.config.doc_length)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--vocab", syn.config.vocab)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", syn.config.seed);
  synth_cmd->add_option("--topic-concentration", syn.config.topic_concentration)
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--doc-concentration", syn.config.doc_concentration)
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out-dir", syn.out_dir, "Writes docs/ and planted_phi.tsv")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train LDA by collapsed Gibbs sampling");
  train_cmd->add_option("--topics", tr.topics, "Number of topics")->required();
  train_cmd->add_option("--alpha", tr.alpha, "Document-topic prior (default 50/topics)");
  train_cmd->add_option("--chi", tr.chi, "Topic-word prior");
  train_cmd->add_option("--iters", tr.iters, "Total sweeps");
  train_cmd->add_option("--burn-in", tr.burn_in, "Burn-in sweeps");
  train_cmd->add_option("--seed", tr.seed);
  train_cmd->add_option("--chains", tr.chains, "Independent chains; chain 0 is saved");
  train_cmd->add_option("--trace-every", tr.trace_every, "Trace interval in sweeps (0: off)");
  train_cmd->add_option("--average-lag", tr.average_lag, "Average estimates every L sweeps after burn-in");
  train_cmd->add_option("--convergence-window", tr.window)->check(CLI::PositiveNumber);
  train_cmd->add_option("--convergence-threshold", tr.threshold);
  train_cmd->add_option("--corpus", tr.corpus, "Sparse corpus file")->required();
  train_cmd->add_option("--vocab", tr.vocab, "Vocabulary (default: vocab.txt beside corpus)");
  train_cmd->add_option("--manifest", tr.manifest, "Manifest (default: manifest.tsv beside corpus)");
  train_cmd->add_option("--out", tr.out, "Model file")->required();
  train_cmd->add_option("--trace", tr.trace, "Trace CSV (default: <out>.trace.csv)");

  TopicsArgs tp;
  auto* topics_cmd = app.add_subcommand("topics", "Print the top words of each topic");
  topics_cmd->add_option("--model", tp.model)->required();
  topics_cmd->add_option("--top-k", tp.top_k)->check(CLI::PositiveNumber);
  topics_cmd->add_option("--out", tp.out, "TSV output (default: stdout)");

  TfidfArgs tf;
  auto* tfidf_cmd = app.add_subcommand("tfidf", "Rank each document's terms by TF-IDF");
  tfidf_cmd->add_option("--corpus", tf.corpus)->required();
  tfidf_cmd->add_option("--top-k", tf.top_k)->check(CLI::PositiveNumber);
  tfidf_cmd->add_option("--out", tf.out)->required();
  tfidf_cmd->add_option("--vocab", tf.vocab);
  tfidf_cmd->add_option("--manifest", tf.manifest);

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Target-list precision for LDA and TF-IDF");
  eval_cmd->add_option("--model", ev.model)->required();
  eval_cmd->add_option("--tfidf", ev.tfidf)->required();
  eval_cmd->add_option("--targets", ev.targets, "Target words, one per line")->required();
  eval_cmd->add_option("--tw", ev.tw, "Comma-separated topic word list sizes");
  eval_cmd->add_option("--tg", ev.tg, "Target list sizes as a..b");
  eval_cmd->add_option("--topics-per-doc", ev.topics_per_doc, "Dominant topics per document")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--stopwords", ev.stopwords);
  eval_cmd->add_option("--out", ev.out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*preprocess_cmd) cmd_preprocess(pre, out);
    else if (*wordcount_cmd) cmd_wordcount(wc, out);
    else if (*synth_cmd) cmd_synth(syn, out);
    else if (*train_cmd) cmd_train(tr, out);
    else if (*topics_cmd) cmd_topics(tp, out);
    else if (*tfidf_cmd) cmd_tfidf(tf, out);
    else if (*eval_cmd) cmd_eval(ev, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace topicforge
