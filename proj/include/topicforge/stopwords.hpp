#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

namespace topicforge {

/// Version tag of the bundled English stopword list.
inline constexpr std::string_view kStopwordListVersion = "en-1";

/// The bundled list, lowercase, in file order. Identical to
/// data/stopwords_en.txt.
std::span<const std::string_view> default_stopwords();

/// A set of lowercase surface forms filtered out before stemming.
class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::span<const std::string_view> words);

  static StopwordList english();

  /// One word per line; blank lines and lines starting with '#' are skipped.
  /// Words are lowercased.
  static StopwordList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const {
    return words_.find(std::string(word)) != words_.end();
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace topicforge
