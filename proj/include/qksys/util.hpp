#pragma once

#include <cstdint>

#include "qksys/errors.hpp"

namespace qksys {

// C(n, k) in 64-bit arithmetic; callers stay well inside the range.
inline std::int64_t binom64(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: the partial product is a binomial
  }
  return r;
}

// Smallest integer d with d^k >= m, i.e. ceil(m^(1/k)), in exact arithmetic.
inline std::int64_t ceil_root(std::int64_t m, int k) {
  if (m <= 0) return 0;
  if (k <= 0) throw BadParams("ceil_root: k must be positive");
  std::int64_t lo = 1, hi = 1;
  auto pow_ge = [&](std::int64_t d) {
    __int128 p = 1;
    for (int i = 0; i < k; ++i) {
      p *= d;
      if (p >= m) return true;
    }
    return p >= m;
  };
  while (!pow_ge(hi)) hi *= 2;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (pow_ge(mid)) hi = mid; else lo = mid + 1;
  }
  return lo;
}

// Smallest integer d with d*d >= x.
inline std::int64_t ceil_sqrt(std::int64_t x) { return ceil_root(x, 2); }

}  // namespace qksys
