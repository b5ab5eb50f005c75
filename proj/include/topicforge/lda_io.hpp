#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "topicforge/lda.hpp"

namespace topicforge {

inline constexpr int kModelFormatVersion = 1;

/// Text model file: versioned header, hyperparameters, vocabulary, document
/// ids, then phi and psi as row-major rows of 17-significant-digit decimals.
void write_model(std::ostream& out, const LdaModel& model);
void write_model(const std::filesystem::path& path, const LdaModel& model);
LdaModel read_model(std::istream& in);
LdaModel read_model(const std::filesystem::path& path);

/// CSV `chain_id,iteration,log_likelihood` with a header row.
void write_trace_csv(const std::filesystem::path& path, std::span<const ChainTrace> traces);
std::vector<ChainTrace> read_trace_csv(const std::filesystem::path& path);

}  // namespace topicforge
