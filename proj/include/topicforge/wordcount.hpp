#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topicforge {

using KeyValue = std::pair<std::string, std::uint64_t>;

/// token -> count, every count >= 1. Ordered so that equality and output
/// are independent of insertion history.
class CountTable {
 public:
  void add(const std::string& token, std::uint64_t count);
  void merge_from(const CountTable& other);
  std::uint64_t count(const std::string& token) const;
  std::uint64_t total() const;
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const std::map<std::string, std::uint64_t>& entries() const { return counts_; }

  /// Sorted by count descending, then token ascending.
  std::vector<KeyValue> ranked() const;

  bool operator==(const CountTable&) const = default;

 private:
  std::map<std::string, std::uint64_t> counts_;
};

CountTable merge(const CountTable& a, const CountTable& b);

struct Shard {
  std::size_t id = 0;
  std::span<const std::string> tokens;
};

/// One (token, 1) pair per input token, in input order.
std::vector<KeyValue> map_phase(std::span<const std::string> tokens);

CountTable reduce_phase(std::span<const KeyValue> pairs);

/// Splits `tokens` into `num_shards` contiguous ranges whose sizes differ by
/// at most one. Throws InvalidArgument when num_shards < 1.
std::vector<Shard> make_shards(std::span<const std::string> tokens, std::size_t num_shards);

struct PhaseTiming {
  double map_seconds = 0.0;     // wall clock for all map workers
  double reduce_seconds = 0.0;  // per-shard reduce plus the merge
  double total_seconds = 0.0;
  std::size_t shards = 0;
  std::size_t tokens = 0;
};

struct WordCountResult {
  CountTable counts;
  PhaseTiming timing;
};

/// Runs map and a local reduce on each shard in its own thread, then merges
/// the partial tables in shard-id order. The result equals
/// reduce_phase(map_phase(tokens)) for every num_shards >= 1.
WordCountResult parallel_wordcount(std::span<const std::string> tokens, std::size_t num_shards);

/// TSV `token<TAB>count`, ranked order, LF newlines.
void write_counts_tsv(const std::filesystem::path& path, const CountTable& counts);

}  // namespace topicforge
