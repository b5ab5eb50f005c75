#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "test_util.hpp"
#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"
#include "topicforge/porter_stemmer.hpp"
#include "topicforge/stopwords.hpp"
#include "topicforge/text_io.hpp"

using namespace topicforge;
using topicforge::testing::TempDir;

TEST_CASE("porter stemmer matches the reference vectors") {
  // Frozen from an independent implementation of the original 1980 algorithm.
  const auto lines = read_lines(topicforge::testing::data_dir() / "porter_vectors.tsv");
  REQUIRE(lines.size() > 3000);
  std::size_t mismatches = 0;
  for (const auto& line : lines) {
    const auto cols = split(line, '\t');
    REQUIRE(cols.size() == 2);
    const std::string got = porter_stem(cols[0]);
    if (got != cols[1]) {
      ++mismatches;
      MESSAGE(std::string(cols[0]) << ": expected " << std::string(cols[1]) << ", got " << got);
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("porter stemmer classic examples") {
  CHECK(porter_stem("caresses") == "caress");
  CHECK(porter_stem("ponies") == "poni");
  CHECK(porter_stem("running") == "run");
  CHECK(porter_stem("hopping") == "hop");
  CHECK(porter_stem("filing") == "file");
  CHECK(porter_stem("feed") == "feed");
  CHECK(porter_stem("agreed") == "agre");
  CHECK(porter_stem("conformabli") == "conform");  // abli -> able, then step 4
  CHECK(porter_stem("generalizations") == "gener");
  CHECK(porter_stem("is") == "is");
  CHECK(porter_stem("governor") == "governor");
}

TEST_CASE("preprocess applies the pipeline in order") {
  const auto sw = StopwordList::english();
  CHECK(preprocess("The Governor's campaign!", sw) == std::vector<std::string>{"governor", "campaign"});
  CHECK(preprocess("", sw).empty());
  CHECK(preprocess("running RUNNING", sw) == std::vector<std::string>{"run", "run"});
  // Digits and punctuation separate tokens; single letters vanish.
  CHECK(preprocess("abc123def x-y nbsp;http://ofa", sw) ==
        std::vector<std::string>{"abc", "def", "nbsp", "http", "ofa"});
  // Stopwords are matched on the surface form, before stemming.
  CHECK(preprocess("having been", sw).empty());
  // Non-ASCII bytes are separators.
  CHECK(preprocess("caf\xC3\xA9s na\xC3\xAFve", sw) == std::vector<std::string>{"caf", "na", "ve"});
}

TEST_CASE("custom stopword list") {
  TempDir dir;
  write_file(dir / "sw.txt", "# comment\nCampaign\n\n  governor \n");
  const auto sw = StopwordList::load(dir / "sw.txt");
  CHECK(sw.size() == 2);
  CHECK(preprocess("The Governor campaign", sw) == std::vector<std::string>{"the"});
}

TEST_CASE("bundled stopword file matches the compiled list") {
  const auto file = StopwordList::load(topicforge::testing::source_dir() / "data" / "stopwords_en.txt");
  CHECK(file.size() == default_stopwords().size());
  for (auto w : default_stopwords()) CHECK(file.contains(w));
}

TEST_CASE("utf8 sanitizing") {
  CHECK(sanitize_utf8("plain") == "plain");
  CHECK(sanitize_utf8("caf\xC3\xA9") == "caf\xC3\xA9");
  CHECK(sanitize_utf8("a\xFF" "b") == "a\xEF\xBF\xBD" "b");
  // Truncated three-byte sequence becomes a single replacement.
  CHECK(sanitize_utf8("a\xE2\x82") == "a\xEF\xBF\xBD");
  // Overlong encoding of '/'.
  CHECK(sanitize_utf8("\xC0\xAF") == "\xEF\xBF\xBD\xEF\xBF\xBD");
  // Surrogates are not valid UTF-8.
  CHECK(sanitize_utf8("\xED\xA0\x80") == "\xEF\xBF\xBD\xEF\xBF\xBD\xEF\xBF\xBD");
  CHECK(sanitize_utf8("\xF0\x9F\x98\x80") == "\xF0\x9F\x98\x80");
}

TEST_CASE("header block stripping") {
  CHECK(strip_header_block("Subject: x\n\nbody") == "body");
  CHECK(strip_header_block("From: a@b\r\nSubject: x\r\n\r\nline1\nline2") == "line1\nline2");
  CHECK(strip_header_block("no header here\n\nbody") == "no header here\n\nbody");
  CHECK(strip_header_block("Subject: only headers\nTo: x") == "");
  CHECK(strip_header_block("Subject: x\n\n") == "");
  CHECK(strip_header_block(": not a header\n\nbody") == ": not a header\n\nbody");
}

TEST_CASE("ingest sorts by filename and strips on request") {
  TempDir dir;
  write_file(dir / "b.txt", "Hi");
  write_file(dir / "a.txt", "Yo");
  write_file(dir / "c.eml", "Subject: x\n\nbody");
  std::filesystem::create_directories(dir / "nested");

  const auto plain = ingest(dir.path());
  REQUIRE(plain.documents.size() == 3);
  CHECK(plain.failures.empty());
  CHECK(plain.documents[0].id == "a.txt");
  CHECK(plain.documents[0].body == "Yo");
  CHECK(plain.documents[1].id == "b.txt");
  CHECK(plain.documents[1].body == "Hi");
  CHECK(plain.documents[2].body == "Subject: x\n\nbody");

  const auto stripped = ingest(dir.path(), {.strip_headers = true});
  CHECK(stripped.documents[2].body == "body");
}

TEST_CASE("ingest errors") {
  TempDir dir;
  CHECK_THROWS_AS(ingest(dir.path()), DataError);
  CHECK_THROWS_AS(ingest(dir / "missing"), DataError);
}

TEST_CASE("ingest replaces invalid bytes") {
  TempDir dir;
  write_file(dir / "x.txt", "ok\xFFok");
  CHECK(ingest(dir.path()).documents[0].body == "ok\xEF\xBF\xBDok");
}

TEST_CASE("parallel preprocessing equals serial") {
  std::vector<RawDocument> docs;
  for (int k = 0; k < 37; ++k)
    docs.push_back({"d" + std::to_string(k), "Running campaigns in state number " + std::to_string(k) +
                                                 " with governors and voters"});
  const auto sw = StopwordList::english();
  const auto serial = preprocess_documents(docs, sw, 1);
  const auto parallel = preprocess_documents(docs, sw, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(serial[k].id == parallel[k].id);
    CHECK(serial[k].tokens == parallel[k].tokens);
  }
}

TEST_CASE("double formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, -2.5, 0.0}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double("1.0x"), DataError);
}
