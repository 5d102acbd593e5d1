#pragma once

// Integer dynamics of the reduced Collatz map
//
//   T(n) = (3n + 1) / 2   for odd n
//   T(n) = n / 2          for even n
//
// on all of Z, with arbitrary-precision integers. A 128-bit fast path is used
// while values fit and is promoted to GMP integers on overflow.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace collatz {

using BigInt = mpz_class;

/// Default iteration cap for stopping-time queries.
inline constexpr std::uint64_t kDefaultCap = 100000;

/// Iteration cap honouring the COLLATZ_CAP environment variable.
std::uint64_t default_cap();

BigInt collatz_step(const BigInt& n);

/// Machine-word step. Requires |n| < 2^61 so that (3n+1)/2 cannot overflow.
constexpr std::int64_t collatz_step(std::int64_t n) {
  return (n % 2 != 0) ? (3 * n + 1) / 2 : n / 2;
}

/// T^m(n).
BigInt collatz_iterate(const BigInt& n, std::uint64_t m);

/// The set-valued right inverse: {2n}, plus (2n-1)/3 when n = 2 (mod 3).
/// Sorted ascending.
std::vector<BigInt> inverse_step(const BigInt& n);

/// Raised when sigma(n) is needed but unresolved under the iteration cap.
class UnresolvedError : public std::runtime_error {
 public:
  UnresolvedError(std::vector<std::int64_t> indices, std::uint64_t cap);
  const std::vector<std::int64_t>& indices() const { return indices_; }

 private:
  std::vector<std::int64_t> indices_;
};

class StoppingTime {
 public:
  enum class Kind { Finite, Unresolved, Infinite };

  static StoppingTime finite(std::uint64_t k) { return {Kind::Finite, k}; }
  static StoppingTime unresolved(std::uint64_t cap) { return {Kind::Unresolved, cap}; }
  static StoppingTime infinite() { return {Kind::Infinite, 0}; }

  Kind kind() const { return kind_; }
  bool resolved() const { return kind_ == Kind::Finite; }
  /// Only meaningful when resolved().
  std::uint64_t value() const { return value_; }
  /// Only meaningful for Unresolved.
  std::uint64_t cap() const { return value_; }

  std::string to_string() const;

  friend bool operator==(const StoppingTime&, const StoppingTime&) = default;

 private:
  StoppingTime(Kind kind, std::uint64_t value) : kind_(kind), value_(value) {}
  Kind kind_;
  std::uint64_t value_;
};

/// Memo of resolved total stopping times, keyed on nonnegative n that fit in
/// 64 bits. Readers and inserters may run concurrently; entries are
/// deterministic, so racing inserts of the same key are harmless.
class StoppingTimeMemo {
 public:
  std::optional<std::uint64_t> lookup(std::uint64_t n) const;
  void insert(std::uint64_t n, std::uint64_t sigma);
  std::size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, std::uint64_t> entries_;
};

StoppingTimeMemo& default_memo();

/// Smallest k <= cap with T^k(n) = 1, with the convention sigma(0) = 0.
/// Negative n never reaches 1 (T preserves sign) and is reported Infinite.
/// Pass memo = nullptr for plain iteration.
StoppingTime total_stopping_time(const BigInt& n, std::uint64_t cap = default_cap(),
                                 StoppingTimeMemo* memo = &default_memo());

struct CycleReport {
  std::vector<BigInt> members;  // starts at the minimum member
  std::size_t length() const { return members.size(); }
};

/// Iterates T from n for at most cap steps and returns the first cycle
/// entered, rotated to start at its minimum.
std::optional<CycleReport> detect_cycle(const BigInt& n, std::uint64_t cap = default_cap());

/// Dense table of sigma(n) for 0 <= n <= limit, built bottom-up. Immutable
/// after construction, so it may be shared freely between threads.
class StoppingTimeTable {
 public:
  StoppingTimeTable(std::int64_t limit, std::uint64_t cap);

  std::int64_t limit() const { return limit_; }
  std::uint64_t cap() const { return cap_; }
  StoppingTime at(std::int64_t n) const;
  bool resolved(std::int64_t n) const { return sigma_.at(static_cast<std::size_t>(n)) != kUnresolved; }
  /// sigma(n); throws if unresolved.
  std::uint64_t value(std::int64_t n) const;
  /// Indices n <= upto that are unresolved under the cap.
  std::vector<std::int64_t> unresolved(std::int64_t upto) const;
  /// counts[k] = #{from <= n <= upto : sigma(n) = k}; unresolved n are skipped.
  std::vector<std::uint64_t> histogram(std::int64_t from, std::int64_t upto) const;
  /// Throws UnresolvedError listing every unresolved index in [from, upto].
  void require_resolved(std::int64_t from, std::int64_t upto) const;

 private:
  static constexpr std::uint32_t kUnresolved = 0xffffffffu;
  std::int64_t limit_;
  std::uint64_t cap_;
  std::vector<std::uint32_t> sigma_;
};

/// Process-wide cached table covering at least [0, limit] under cap.
std::shared_ptr<const StoppingTimeTable> shared_stopping_table(std::int64_t limit,
                                                               std::uint64_t cap = default_cap());

}  // namespace collatz
