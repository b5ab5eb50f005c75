#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "topicforge/corpus.hpp"
#include "topicforge/matrix.hpp"

namespace topicforge {

struct SynthConfig {
  std::size_t topics = 5;
  std::size_t documents = 200;
  std::size_t doc_length = 50;
  std::size_t vocab = 500;
  double topic_concentration = 0.05;  // Dirichlet on planted topic-word rows
  double doc_concentration = 0.1;     // Dirichlet on planted document mixtures
  std::uint64_t seed = 0;
};

/// Text drawn from the LDA generative process with known parameters.
struct SyntheticCorpus {
  std::vector<std::string> words;  // planted vocabulary; every entry survives preprocessing
  Matrix phi;                      // topics x words
  Matrix psi;                      // documents x topics
  std::vector<TokenizedDocument> documents;
};

SyntheticCorpus generate_synthetic(const SynthConfig& config);

/// Pseudo-words that are letters only, not stopwords, and fixed points of
/// the stemmer, so that preprocessing maps each to itself.
std::vector<std::string> synthetic_words(std::size_t count);

/// Writes one text file per document into `dir`.
void write_synthetic(const std::filesystem::path& dir, const SyntheticCorpus& synth);

/// TSV: word, then one planted probability column per topic.
void write_planted_phi(const std::filesystem::path& path, const SyntheticCorpus& synth);

}  // namespace topicforge
