#include "topicforge/wordcount.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "topicforge/error.hpp"
#include "topicforge/text_io.hpp"

namespace topicforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void CountTable::add(const std::string& token, std::uint64_t count) {
  if (count == 0) return;
  counts_[token] += count;
}

std::uint64_t CountTable::count(const std::string& token) const {
  auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t CountTable::total() const {
  std::uint64_t t = 0;
  for (const auto& [_, c] : counts_) t += c;
  return t;
}

std::vector<KeyValue> CountTable::ranked() const {
  std::vector<KeyValue> out(counts_.begin(), counts_.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const KeyValue& a, const KeyValue& b) { return a.second > b.second; });
  return out;
}

void CountTable::merge_from(const CountTable& other) {
  for (const auto& [token, c] : other.counts_) counts_[token] += c;
}

CountTable merge(const CountTable& a, const CountTable& b) {
  CountTable out = a;
  out.merge_from(b);
  return out;
}

std::vector<KeyValue> map_phase(std::span<const std::string> tokens) {
  std::vector<KeyValue> pairs;
  pairs.reserve(tokens.size());
  for (const auto& t : tokens) pairs.emplace_back(t, 1);
  return pairs;
}

CountTable reduce_phase(std::span<const KeyValue> pairs) {
  CountTable table;
  for (const auto& [token, c] : pairs) table.add(token, c);
  return table;
}

std::vector<Shard> make_shards(std::span<const std::string> tokens, std::size_t num_shards) {
  if (num_shards < 1) throw InvalidArgument("num_shards must be >= 1");
  std::vector<Shard> shards;
  shards.reserve(num_shards);
  const std::size_t base = tokens.size() / num_shards;
  const std::size_t extra = tokens.size() % num_shards;
  std::size_t offset = 0;
  for (std::size_t s = 0; s < num_shards; ++s) {
    const std::size_t len = base + (s < extra ? 1 : 0);
    shards.push_back({s, tokens.subspan(offset, len)});
    offset += len;
  }
  return shards;
}

WordCountResult parallel_wordcount(std::span<const std::string> tokens, std::size_t num_shards) {
  const auto start = Clock::now();
  const auto shards = make_shards(tokens, num_shards);

  std::vector<std::vector<KeyValue>> mapped(shards.size());
  std::vector<CountTable> partial(shards.size());

  const auto map_start = Clock::now();
  {
    std::vector<std::jthread> workers;
    for (const auto& shard : shards)
      workers.emplace_back([&, id = shard.id] { mapped[id] = map_phase(shards[id].tokens); });
  }
  const double map_seconds = seconds_since(map_start);

  const auto reduce_start = Clock::now();
  {
    std::vector<std::jthread> workers;
    for (const auto& shard : shards)
      workers.emplace_back([&, id = shard.id] {
        partial[id] = reduce_phase(mapped[id]);
        mapped[id].clear();
        mapped[id].shrink_to_fit();
      });
  }
  CountTable result;
  for (const auto& p : partial) result.merge_from(p);
  const double reduce_seconds = seconds_since(reduce_start);

  WordCountResult out{std::move(result), {}};
  out.timing = {map_seconds, reduce_seconds, seconds_since(start), shards.size(), tokens.size()};
  return out;
}

void write_counts_tsv(const std::filesystem::path& path, const CountTable& counts) {
  std::string out;
  for (const auto& [token, c] : counts.ranked()) {
    out += token;
    out += '\t';
    out += std::to_string(c);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace topicforge
