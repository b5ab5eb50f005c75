#include <doctest.h>

#include <sstream>

#include "test_util.hpp"
#include "topicforge/cli.hpp"
#include "topicforge/lda_io.hpp"
#include "topicforge/sparse_format.hpp"

using namespace topicforge;
using topicforge::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("help and usage errors") {
  auto r = cli({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("train") != std::string::npos);
  CHECK(cli({"train", "--help"}).code == kExitOk);

  r = cli({"train", "--topics", "3", "--out", "m.txt"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--corpus") != std::string::npos);

  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"tfidf", "--corpus", "c", "--out", "o", "--unknown-flag"}).code == kExitUsage);
  CHECK(cli({"wordcount", "--shards", "0", "--input", "x", "--out", "y"}).code == kExitUsage);
  CHECK(cli({"eval", "--model", "m", "--tfidf", "t", "--targets", "g", "--out", "o", "--tw", "a,b"})
            .code == kExitUsage);
}

TEST_CASE("data errors") {
  TempDir dir;
  auto r = cli({"train", "--topics", "2", "--corpus", (dir / "missing.txt").string(), "--out",
                (dir / "m.txt").string()});
  CHECK(r.code == kExitData);
  CHECK_FALSE(r.err.empty());

  write_file(dir / "vocab.txt", "a\n");
  write_file(dir / "corpus.txt", "1 0:0\n");
  r = cli({"tfidf", "--corpus", (dir / "corpus.txt").string(), "--out", (dir / "t.tsv").string()});
  CHECK(r.code == kExitData);
  CHECK(r.err.find("line 1") != std::string::npos);

  std::filesystem::create_directories(dir / "empty");
  CHECK(cli({"preprocess", "--input", (dir / "empty").string(), "--out-dir", (dir / "o").string()})
            .code == kExitData);
}

TEST_CASE("pipeline through the CLI") {
  TempDir dir;
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  REQUIRE(cli({"synth", "--topics", "3", "--docs", "30", "--doc-len", "20", "--vocab", "60", "--seed",
               "3", "--out-dir", p("syn")})
              .code == kExitOk);
  REQUIRE(cli({"preprocess", "--input", p("syn/docs"), "--out-dir", p("pre")}).code == kExitOk);
  const Corpus corpus = read_corpus(CorpusFiles::in_directory(dir / "pre"));
  CHECK(corpus.documents.size() == 30);
  CHECK(corpus.total_tokens() == 600);

  REQUIRE(cli({"wordcount", "--shards", "3", "--input", p("pre/corpus.txt"), "--out", p("wc1.tsv")})
              .code == kExitOk);
  REQUIRE(cli({"wordcount", "--shards", "1", "--input", p("syn/docs"), "--out", p("wc2.tsv")}).code ==
          kExitOk);
  CHECK(read_file(dir / "wc1.tsv") == read_file(dir / "wc2.tsv"));

  auto r = cli({"train", "--topics", "3", "--iters", "40", "--burn-in", "20", "--seed", "9",
                "--chains", "2", "--trace-every", "5", "--corpus", p("pre/corpus.txt"), "--out",
                p("model.txt")});
  REQUIRE(r.code == kExitOk);
  const auto model = read_model(dir / "model.txt");
  CHECK(model.num_topics() == 3);
  CHECK(model.hyperparams.alpha == 50.0 / 3.0);
  CHECK(model.document_ids.front() == "doc00000.txt");
  const auto trace = read_trace_csv(dir / "model.txt.trace.csv");
  CHECK(trace.size() == 2);
  CHECK(trace[0].size() == 9);

  r = cli({"topics", "--model", p("model.txt"), "--top-k", "4"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("topic\trank\tterm\tprobability\n0\t1\t", 0) == 0);

  REQUIRE(cli({"tfidf", "--corpus", p("pre/corpus.txt"), "--top-k", "5", "--out", p("tfidf.tsv")})
              .code == kExitOk);
  write_file(dir / "targets.txt", corpus.vocabulary.term(0) + "\n" + corpus.vocabulary.term(1) + "\n" +
                                      corpus.vocabulary.term(2) + "\n");
  r = cli({"eval", "--model", p("model.txt"), "--tfidf", p("tfidf.tsv"), "--targets", p("targets.txt"),
           "--tw", "2,5", "--tg", "1..3", "--out", p("report.csv")});
  REQUIRE(r.code == kExitOk);
  const auto lines = read_lines(dir / "report.csv");
  CHECK(lines.size() == 1 + 2 * 2 * 3);

  // The TF-IDF file only ranks 5 terms per document.
  r = cli({"eval", "--model", p("model.txt"), "--tfidf", p("tfidf.tsv"), "--targets", p("targets.txt"),
           "--tw", "10", "--tg", "1..3", "--out", p("report2.csv")});
  CHECK(r.code == kExitData);
  r = cli({"eval", "--model", p("model.txt"), "--tfidf", p("tfidf.tsv"), "--targets", p("targets.txt"),
           "--tw", "2", "--tg", "1..4", "--out", p("report2.csv")});
  CHECK(r.code == kExitUsage);
}
