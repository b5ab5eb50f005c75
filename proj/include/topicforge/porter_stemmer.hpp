#pragma once

#include <string>
#include <string_view>

namespace topicforge {

/// Classic Porter (1980) suffix-stripping stemmer, steps 1a through 5b.
///
/// Operates on lowercase ASCII words. Words of length <= 2 are returned
/// unchanged. This is the algorithm as originally published: step 2 maps
/// "abli" to "able" and has no "logi" rule, unlike some later reference
/// implementations.
std::string porter_stem(std::string_view word);

}  // namespace topicforge
