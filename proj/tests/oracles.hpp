#pragma once

// Slow, independent reference computations used to cross-check the library.

#include <cstdint>
#include <map>
#include <optional>

namespace oracle {

inline std::int64_t step(std::int64_t n) { return n % 2 != 0 ? (3 * n + 1) / 2 : n / 2; }

/// Plain iteration to 1, no memo; nullopt past the cap.
inline std::optional<std::uint64_t> sigma(std::int64_t n, std::uint64_t cap = 100000) {
  if (n == 0) return 0;
  if (n < 0) return std::nullopt;
  std::uint64_t k = 0;
  while (n != 1) {
    if (k == cap) return std::nullopt;
    n = step(n);
    ++k;
  }
  return k;
}

inline std::int64_t iterate(std::int64_t n, std::uint64_t m) {
  while (m-- > 0) n = step(n);
  return n;
}

}  // namespace oracle
