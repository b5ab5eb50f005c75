#include <doctest.h>

#include "test_util.hpp"
#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"
#include "topicforge/rng.hpp"
#include "topicforge/sparse_format.hpp"

using namespace topicforge;
using topicforge::testing::TempDir;

namespace {

Document random_document(Rng& rng) {
  Document d;
  const std::size_t n = 1 + rng.below(40);
  TermId term = static_cast<TermId>(rng.below(5));
  for (std::size_t k = 0; k < n; ++k) {
    d.entries.push_back({term, static_cast<std::uint32_t>(1 + rng.below(rng.below(2) ? 9 : 100000))});
    term += static_cast<TermId>(1 + rng.below(1000));
  }
  return d;
}

}  // namespace

TEST_CASE("build_corpus counts terms in first-occurrence order") {
  const auto r = build_corpus({{"d", {"a", "b", "a"}}});
  CHECK(r.corpus.vocabulary.terms() == std::vector<std::string>{"a", "b"});
  REQUIRE(r.corpus.documents.size() == 1);
  CHECK(r.corpus.documents[0].entries == std::vector<TermCount>{{0, 2}, {1, 1}});
  CHECK(r.dropped.empty());
}

TEST_CASE("build_corpus drops empty documents") {
  const auto r = build_corpus({{"e", {}}, {"x", {"x"}}});
  CHECK(r.corpus.documents.size() == 1);
  CHECK(r.dropped == std::vector<std::string>{"e"});
  CHECK_THROWS_AS(build_corpus({{"e", {}}, {"f", {}}}), DataError);
  CHECK_THROWS_AS(build_corpus({}), DataError);
}

TEST_CASE("build_corpus shares ids across documents") {
  const auto r = build_corpus({{"1", {"zeta", "common"}}, {"2", {"common", "alpha", "zeta"}}});
  const auto& v = r.corpus.vocabulary;
  CHECK(v.terms() == std::vector<std::string>{"zeta", "common", "alpha"});
  CHECK(r.corpus.documents[1].entries == std::vector<TermCount>{{0, 1}, {1, 1}, {2, 1}});
  CHECK(r.corpus.total_tokens() == 5);
  r.corpus.validate();
}

TEST_CASE("vocabulary lookup and duplicates") {
  Vocabulary v;
  CHECK(v.add("a") == 0);
  CHECK(v.add("b") == 1);
  CHECK(v.add("a") == 0);
  CHECK(v.find("b") == 1u);
  CHECK_FALSE(v.find("z").has_value());
  CHECK_THROWS_AS(Vocabulary({"a", "a"}), DataError);
}

TEST_CASE("sparse encoding") {
  Document d{"", {{4, 2}, {7, 1}}};
  CHECK(encode_sparse(d) == "2 4:2,7:1");
  CHECK(decode_sparse("2 4:2,7:1") == d);
  CHECK(encode_sparse(decode_sparse("2 4:2,7:1")) == "2 4:2,7:1");
  CHECK(decode_sparse("1 0:1").entries == std::vector<TermCount>{{0, 1}});
}

TEST_CASE("sparse decoding rejects malformed lines") {
  for (const char* bad : {"0 ", "1 3:0", "", "2 4:2", "1 4:2,5:1", "2 7:1,4:2",
                          "2 4:2,4:1", "x 1:1", "1  1:1", "1 1:1 ", "1 -1:1",
                          "1 1:+1", "1 01:1", "01 1:1", "1 1", "1 1:1,", "1 :1",
                          "1 4294967296:1", "1 1:4294967296"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(decode_sparse(bad), ParseError);
  }
  try {
    decode_sparse("1 3:0", 17);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 17);
    CHECK(std::string(e.what()).find("line 17") != std::string::npos);
  }
}

TEST_CASE("sparse round trip over random documents") {
  Rng rng(99);
  for (int k = 0; k < 2000; ++k) {
    const Document d = random_document(rng);
    const std::string line = encode_sparse(d);
    REQUIRE(decode_sparse(line) == d);
    REQUIRE(encode_sparse(decode_sparse(line)) == line);
  }
}

TEST_CASE("expand_tokens") {
  Document d{"", {{1, 2}, {3, 1}}};
  CHECK(expand_tokens(d) == std::vector<TermId>{1, 1, 3});
}

TEST_CASE("corpus files round trip") {
  TempDir dir;
  const auto built = build_corpus({{"b.txt", {"x", "y", "x"}}, {"c.txt", {"y", "z"}}});
  std::vector<ManifestEntry> manifest{{ManifestEntry::Status::kept, "b.txt", ""},
                                      {ManifestEntry::Status::kept, "c.txt", ""},
                                      {ManifestEntry::Status::dropped, "a.txt", "empty"}};
  const auto files = CorpusFiles::in_directory(dir.path());
  write_corpus(files, built.corpus, manifest);

  CHECK(read_file(files.corpus) == "2 0:2,1:1\n2 1:1,2:1\n");
  CHECK(read_file(files.vocabulary) == "x\ny\nz\n");

  const Corpus back = read_corpus(CorpusFiles::beside(files.corpus));
  CHECK(back.vocabulary == built.corpus.vocabulary);
  CHECK(back.documents == built.corpus.documents);
  const auto m = read_manifest(files.manifest);
  REQUIRE(m.size() == 3);
  CHECK(m[2].status == ManifestEntry::Status::dropped);
  CHECK(m[2].note == "empty");
}

TEST_CASE("corpus reading validates term ids and line numbers") {
  TempDir dir;
  const auto files = CorpusFiles::in_directory(dir.path());
  write_file(files.vocabulary, "a\nb\n");
  write_file(files.corpus, "1 0:1\n1 2:1\n");
  try {
    read_corpus(files);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  write_file(files.corpus, "1 0:1\n1 1:0\n");
  CHECK_THROWS_AS(read_corpus(files), ParseError);
  write_file(files.corpus, "1 0:1\n");
  const Corpus c = read_corpus(files);
  CHECK(c.documents[0].id == "doc0");
}

TEST_CASE("vocabulary ids are stable under re-ingestion") {
  TempDir dir;
  write_file(dir / "b.txt", "States vote. Party party!");
  write_file(dir / "a.txt", "The campaign in the state");
  const auto sw = StopwordList::english();
  auto run = [&] {
    const auto raw = ingest(dir.path());
    return build_corpus(preprocess_documents(raw.documents, sw, 2)).corpus;
  };
  const Corpus first = run();
  const Corpus second = run();
  CHECK(first.vocabulary == second.vocabulary);
  CHECK(first.documents == second.documents);
  CHECK(first.vocabulary.terms() == std::vector<std::string>{"campaign", "state", "vote", "parti"});
  std::size_t tokens = 0;
  for (const auto& raw : ingest(dir.path()).documents) tokens += preprocess(raw.body, sw).size();
  CHECK(first.total_tokens() == tokens);
}
