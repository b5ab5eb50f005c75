#pragma once

#include <cmath>

namespace topicforge::detail {

/// ln Gamma(x) for x > 0. glibc's lgamma() writes the global signgam, so the
/// reentrant variant is used where available.
inline double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

}  // namespace topicforge::detail
