#include "topicforge/synth.hpp"

#include <cstdio>
#include <unordered_set>

#include "topicforge/error.hpp"
#include "topicforge/porter_stemmer.hpp"
#include "topicforge/rng.hpp"
#include "topicforge/stopwords.hpp"
#include "topicforge/text_io.hpp"

namespace topicforge {

namespace {

constexpr std::string_view kConsonants = "bdfgkmnprtvz";
constexpr std::string_view kVowels = "aiou";

// Writes `index` as alternating consonant/vowel letters, `syllables` vowels
// long, always ending on a consonant.
std::string spell(std::size_t index, std::size_t syllables) {
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w.push_back(kConsonants[index % kConsonants.size()]);
    index /= kConsonants.size();
    w.push_back(kVowels[index % kVowels.size()]);
    index /= kVowels.size();
  }
  w.push_back(kConsonants[index % kConsonants.size()]);
  return w;
}

std::size_t pattern_count(std::size_t syllables) {
  std::size_t n = kConsonants.size();
  for (std::size_t s = 0; s < syllables; ++s) n *= kConsonants.size() * kVowels.size();
  return n;
}

void dirichlet(Rng& rng, double concentration, std::span<double> out) {
  double sum = 0.0;
  while (!(sum > 0.0)) {
    sum = 0.0;
    for (auto& x : out) {
      x = rng.gamma(concentration);
      sum += x;
    }
  }
  for (auto& x : out) x /= sum;
}

std::size_t categorical(Rng& rng, std::span<const double> p) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    cumulative += p[k];
    if (u < cumulative) return k;
  }
  return p.size() - 1;
}

}  // namespace

std::vector<std::string> synthetic_words(std::size_t count) {
  const auto stopwords = StopwordList::english();
  std::vector<std::string> words;
  words.reserve(count);
  for (std::size_t syllables = 2; words.size() < count; ++syllables) {
    const std::size_t n = pattern_count(syllables);
    for (std::size_t k = 0; k < n && words.size() < count; ++k) {
      // 7919 is coprime to every pattern count, so this permutes [0, n).
      std::string w = spell((k * 7919) % n, syllables);
      if (stopwords.contains(w) || porter_stem(w) != w) continue;
      words.push_back(std::move(w));
    }
  }
  return words;
}

SyntheticCorpus generate_synthetic(const SynthConfig& config) {
  if (config.topics < 1 || config.documents < 1 || config.doc_length < 1 || config.vocab < 1)
    throw InvalidArgument("synthetic corpus sizes must all be >= 1");
  if (!(config.topic_concentration > 0.0) || !(config.doc_concentration > 0.0))
    throw InvalidArgument("synthetic concentrations must be > 0");

  Rng rng(config.seed);
  SyntheticCorpus out;
  out.words = synthetic_words(config.vocab);
  out.phi = Matrix(config.topics, config.vocab);
  for (std::size_t j = 0; j < config.topics; ++j)
    dirichlet(rng, config.topic_concentration, out.phi.row(j));
  out.psi = Matrix(config.documents, config.topics);
  for (std::size_t d = 0; d < config.documents; ++d)
    dirichlet(rng, config.doc_concentration, out.psi.row(d));

  out.documents.reserve(config.documents);
  char name[32];
  for (std::size_t d = 0; d < config.documents; ++d) {
    std::snprintf(name, sizeof(name), "doc%05zu.txt", d);
    TokenizedDocument doc{name, {}};
    doc.tokens.reserve(config.doc_length);
    for (std::size_t n = 0; n < config.doc_length; ++n) {
      const std::size_t topic = categorical(rng, out.psi.row(d));
      doc.tokens.push_back(out.words[categorical(rng, out.phi.row(topic))]);
    }
    out.documents.push_back(std::move(doc));
  }
  return out;
}

void write_synthetic(const std::filesystem::path& dir, const SyntheticCorpus& synth) {
  std::filesystem::create_directories(dir);
  for (const auto& doc : synth.documents) {
    std::string text;
    for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
      text += doc.tokens[k];
      text += (k + 1) % 12 == 0 || k + 1 == doc.tokens.size() ? '\n' : ' ';
    }
    write_file(dir / doc.id, text);
  }
}

void write_planted_phi(const std::filesystem::path& path, const SyntheticCorpus& synth) {
  std::string out = "word";
  for (std::size_t j = 0; j < synth.phi.rows(); ++j) out += "\ttopic" + std::to_string(j);
  out += '\n';
  for (std::size_t v = 0; v < synth.words.size(); ++v) {
    out += synth.words[v];
    for (std::size_t j = 0; j < synth.phi.rows(); ++j) out += '\t' + format_double(synth.phi(j, v));
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace topicforge
