#include "collatz/collatz_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace collatz {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// Values below this bound can take one more step without leaving 128 bits.
constexpr i128 kFastBound = static_cast<i128>(1) << 124;

bool fits_fast(i128 v) { return v < kFastBound && v > -kFastBound; }

std::optional<i128> to_i128(const BigInt& n) {
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 124) return std::nullopt;
  mpz_class mag = abs(n);
  mpz_class hi = mag >> 64;
  mpz_class lo = mag - (hi << 64);
  u128 v = (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
  i128 s = static_cast<i128>(v);
  return sgn(n) < 0 ? -s : s;
}

BigInt from_i128(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

i128 step128(i128 n) { return (n % 2 != 0) ? (3 * n + 1) / 2 : n / 2; }

BigInt step_big(const BigInt& n) {
  BigInt r;
  if (mpz_odd_p(n.get_mpz_t())) {
    r = 3 * n + 1;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), 2);
  } else {
    mpz_divexact_ui(r.get_mpz_t(), n.get_mpz_t(), 2);
  }
  return r;
}

std::optional<std::uint64_t> memo_key(i128 v) {
  if (v < 0 || v > static_cast<i128>(UINT64_MAX)) return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

std::optional<std::uint64_t> memo_key(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
  // get_ui is 64-bit on LP64 targets.
  return static_cast<std::uint64_t>(v.get_ui());
}

std::string describe_unresolved(const std::vector<std::int64_t>& indices, std::uint64_t cap) {
  std::string msg = "total stopping time unresolved under cap " + std::to_string(cap) + " for n in {";
  for (std::size_t i = 0; i < indices.size() && i < 20; ++i) {
    if (i > 0) msg += ",";
    msg += std::to_string(indices[i]);
  }
  if (indices.size() > 20) msg += ",... (" + std::to_string(indices.size()) + " total)";
  return msg + "}";
}

}  // namespace

UnresolvedError::UnresolvedError(std::vector<std::int64_t> indices, std::uint64_t cap)
    : std::runtime_error(describe_unresolved(indices, cap)), indices_(std::move(indices)) {}

std::uint64_t default_cap() {
  if (const char* env = std::getenv("COLLATZ_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultCap;
}

BigInt collatz_step(const BigInt& n) {
  if (auto fast = to_i128(n)) return from_i128(step128(*fast));
  return step_big(n);
}

BigInt collatz_iterate(const BigInt& n, std::uint64_t m) {
  std::optional<i128> fast = to_i128(n);
  std::uint64_t done = 0;
  if (fast) {
    i128 v = *fast;
    while (done < m && fits_fast(v)) {
      v = step128(v);
      ++done;
    }
    if (done == m) return from_i128(v);
    BigInt big = from_i128(v);
    for (; done < m; ++done) big = step_big(big);
    return big;
  }
  BigInt big = n;
  for (; done < m; ++done) big = step_big(big);
  return big;
}

std::vector<BigInt> inverse_step(const BigInt& n) {
  std::vector<BigInt> out{BigInt(2 * n)};
  BigInt r = n % 3;
  if (r < 0) r += 3;
  if (r == 2) {
    BigInt pre = 2 * n - 1;
    mpz_divexact_ui(pre.get_mpz_t(), pre.get_mpz_t(), 3);
    out.push_back(pre);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string StoppingTime::to_string() const {
  switch (kind_) {
    case Kind::Finite:
      return std::to_string(value_);
    case Kind::Unresolved:
      return "UNRESOLVED(" + std::to_string(value_) + ")";
    case Kind::Infinite:
      return "INFINITE";
  }
  return {};
}

std::optional<std::uint64_t> StoppingTimeMemo::lookup(std::uint64_t n) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void StoppingTimeMemo::insert(std::uint64_t n, std::uint64_t sigma) {
  std::unique_lock lock(mutex_);
  entries_[n] = sigma;
}

std::size_t StoppingTimeMemo::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void StoppingTimeMemo::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

StoppingTimeMemo& default_memo() {
  static StoppingTimeMemo memo;
  return memo;
}

StoppingTime total_stopping_time(const BigInt& n, std::uint64_t cap, StoppingTimeMemo* memo) {
  if (sgn(n) < 0) return StoppingTime::infinite();
  if (n == 0 || n == 1) return StoppingTime::finite(0);

  // (memo key, step index) for every visited value that can be memoized.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> path;
  std::optional<std::uint64_t> total;
  std::uint64_t steps = 0;

  auto visit = [&](std::optional<std::uint64_t> key) -> bool {
    if (!key) return false;
    if (*key == 1) {
      total = steps;
      return true;
    }
    if (memo != nullptr) {
      if (auto hit = memo->lookup(*key)) {
        total = steps + *hit;
        return true;
      }
      path.emplace_back(*key, steps);
    }
    return false;
  };

  std::optional<i128> fast = to_i128(n);
  BigInt big;
  bool use_big = !fast;
  if (use_big) big = n;
  i128 v = fast.value_or(0);

  while (true) {
    bool done = use_big ? visit(memo_key(big)) : visit(memo_key(v));
    if (done) break;
    if (steps >= cap) break;
    if (!use_big && !fits_fast(v)) {
      big = from_i128(v);
      use_big = true;
    }
    if (use_big) {
      big = step_big(big);
    } else {
      v = step128(v);
    }
    ++steps;
  }

  if (!total) return StoppingTime::unresolved(cap);
  if (memo != nullptr) {
    for (const auto& [key, at] : path) memo->insert(key, *total - at);
  }
  if (*total > cap) return StoppingTime::unresolved(cap);
  return StoppingTime::finite(*total);
}

std::optional<CycleReport> detect_cycle(const BigInt& n, std::uint64_t cap) {
  std::map<BigInt, std::size_t> seen;
  std::vector<BigInt> orbit;
  BigInt v = n;
  for (std::uint64_t i = 0; i <= cap; ++i) {
    auto [it, inserted] = seen.emplace(v, orbit.size());
    if (!inserted) {
      std::vector<BigInt> cycle(orbit.begin() + static_cast<std::ptrdiff_t>(it->second), orbit.end());
      auto min_it = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), min_it, cycle.end());
      return CycleReport{std::move(cycle)};
    }
    orbit.push_back(v);
    v = collatz_step(v);
  }
  return std::nullopt;
}

StoppingTimeTable::StoppingTimeTable(std::int64_t limit, std::uint64_t cap)
    : limit_(limit), cap_(cap), sigma_(static_cast<std::size_t>(std::max<std::int64_t>(limit, 1)) + 1, 0) {
  if (limit < 0) throw std::invalid_argument("StoppingTimeTable: negative limit");
  const u128 overflow_guard = static_cast<u128>(1) << 120;
  for (std::int64_t n = 2; n <= limit; ++n) {
    u128 v = static_cast<u128>(n);
    std::uint64_t d = 0;
    bool fallback = false;
    while (v >= static_cast<u128>(n)) {
      if (d > cap_) break;
      if (v > overflow_guard) {
        fallback = true;
        break;
      }
      v = (v & 1) ? (3 * v + 1) / 2 : v / 2;
      ++d;
    }
    std::uint32_t result = kUnresolved;
    if (fallback) {
      StoppingTime st = total_stopping_time(BigInt(static_cast<long>(n)), cap_, nullptr);
      if (st.resolved()) result = static_cast<std::uint32_t>(st.value());
    } else if (v < static_cast<u128>(n)) {
      std::uint32_t below = sigma_[static_cast<std::size_t>(v)];
      if (below != kUnresolved && d + below <= cap_) result = static_cast<std::uint32_t>(d + below);
    }
    sigma_[static_cast<std::size_t>(n)] = result;
  }
}

StoppingTime StoppingTimeTable::at(std::int64_t n) const {
  if (n < 0) return StoppingTime::infinite();
  if (n > limit_) throw std::out_of_range("StoppingTimeTable: index beyond table limit");
  std::uint32_t s = sigma_[static_cast<std::size_t>(n)];
  if (s == kUnresolved) return StoppingTime::unresolved(cap_);
  return StoppingTime::finite(s);
}

std::uint64_t StoppingTimeTable::value(std::int64_t n) const {
  StoppingTime st = at(n);
  if (!st.resolved()) throw std::runtime_error("sigma(" + std::to_string(n) + ") unresolved under cap");
  return st.value();
}

std::vector<std::int64_t> StoppingTimeTable::unresolved(std::int64_t upto) const {
  std::vector<std::int64_t> out;
  upto = std::min(upto, limit_);
  for (std::int64_t n = 0; n <= upto; ++n) {
    if (sigma_[static_cast<std::size_t>(n)] == kUnresolved) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> StoppingTimeTable::histogram(std::int64_t from, std::int64_t upto) const {
  std::vector<std::uint64_t> counts;
  upto = std::min(upto, limit_);
  for (std::int64_t n = std::max<std::int64_t>(from, 0); n <= upto; ++n) {
    std::uint32_t s = sigma_[static_cast<std::size_t>(n)];
    if (s == kUnresolved) continue;
    if (counts.size() <= s) counts.resize(s + 1, 0);
    ++counts[s];
  }
  return counts;
}

void StoppingTimeTable::require_resolved(std::int64_t from, std::int64_t upto) const {
  if (upto > limit_) throw std::out_of_range("StoppingTimeTable: index beyond table limit");
  std::vector<std::int64_t> bad;
  for (std::int64_t n = std::max<std::int64_t>(from, 0); n <= upto; ++n) {
    if (sigma_[static_cast<std::size_t>(n)] == kUnresolved) bad.push_back(n);
  }
  if (!bad.empty()) throw UnresolvedError(std::move(bad), cap_);
}

std::shared_ptr<const StoppingTimeTable> shared_stopping_table(std::int64_t limit, std::uint64_t cap) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const StoppingTimeTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[cap];
  if (!slot || slot->limit() < limit) {
    std::int64_t size = std::max<std::int64_t>(limit, slot ? 2 * slot->limit() : 1024);
    slot = std::make_shared<const StoppingTimeTable>(size, cap);
  }
  return slot;
}

}  // namespace collatz
