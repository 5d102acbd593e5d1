#include <doctest.h>

#include <cstdlib>

#include "collatz/collatz_core.hpp"
#include "oracles.hpp"

using namespace collatz;

TEST_CASE("single step on small integers") {
  CHECK(collatz_step(std::int64_t{7}) == 11);
  CHECK(collatz_step(std::int64_t{4}) == 2);
  CHECK(collatz_step(std::int64_t{-1}) == -1);
  CHECK(collatz_step(BigInt(7)) == 11);
  CHECK(collatz_step(BigInt(-5)) == -7);
}

TEST_CASE("big integer steps agree with the machine-word path") {
  for (std::int64_t n = -500; n <= 500; ++n) CHECK(collatz_step(BigInt(static_cast<long>(n))) == oracle::step(n));
  const BigInt huge("123456789012345678901234567891");
  CHECK(collatz_step(huge) == (3 * huge + 1) / 2);
}

TEST_CASE("iterates") {
  CHECK(collatz_iterate(BigInt(3), 5) == 1);
  CHECK(collatz_iterate(BigInt(17), 0) == 17);
  CHECK(collatz_iterate(BigInt(2), 2) == 2);
}

TEST_CASE("total stopping time of small n") {
  CHECK(total_stopping_time(BigInt(1)) == StoppingTime::finite(0));
  CHECK(total_stopping_time(BigInt(2)) == StoppingTime::finite(1));
  CHECK(total_stopping_time(BigInt(3)) == StoppingTime::finite(5));
  CHECK(total_stopping_time(BigInt(0)) == StoppingTime::finite(0));
  CHECK(total_stopping_time(BigInt(-3)).kind() == StoppingTime::Kind::Infinite);
}

TEST_CASE("stopping times match plain iteration with and without memo") {
  StoppingTimeMemo memo;
  for (std::int64_t n = 0; n <= 5000; ++n) {
    const auto expected = oracle::sigma(n);
    REQUIRE(expected.has_value());
    CHECK(total_stopping_time(BigInt(static_cast<long>(n)), 100000, &memo).value() == *expected);
    CHECK(total_stopping_time(BigInt(static_cast<long>(n)), 100000, nullptr).value() == *expected);
  }
}

TEST_CASE("cap makes long orbits unresolved") {
  const auto s = total_stopping_time(BigInt(27), 50, nullptr);
  CHECK(s.kind() == StoppingTime::Kind::Unresolved);
  CHECK(s.cap() == 50);
  CHECK(total_stopping_time(BigInt(27), 200, nullptr).value() == *oracle::sigma(27));
}

TEST_CASE("memoized answers respect a smaller cap") {
  StoppingTimeMemo memo;
  CHECK(total_stopping_time(BigInt(27), 1000, &memo).resolved());
  CHECK_FALSE(total_stopping_time(BigInt(27), 10, &memo).resolved());
}

TEST_CASE("stopping time of a large integer") {
  const BigInt n = BigInt(1) << 200;
  CHECK(total_stopping_time(n).value() == 200);
  const BigInt m = (BigInt(1) << 120) + 1;
  const auto s = total_stopping_time(m);
  REQUIRE(s.resolved());
  CHECK(collatz_iterate(m, s.value()) == 1);
  CHECK(collatz_iterate(m, s.value() - 1) != 1);
}

TEST_CASE("inverse step") {
  CHECK(inverse_step(BigInt(2)) == std::vector<BigInt>{1, 4});
  CHECK(inverse_step(BigInt(3)) == std::vector<BigInt>{6});
  CHECK(inverse_step(BigInt(5)) == std::vector<BigInt>{3, 10});
  for (long n = -50; n <= 50; ++n) {
    for (const auto& p : inverse_step(BigInt(n))) CHECK(collatz_step(p) == n);
  }
}

TEST_CASE("cycle detection returns the canonical rotation") {
  auto one = detect_cycle(BigInt(1));
  REQUIRE(one);
  CHECK(one->members == std::vector<BigInt>{1, 2});
  auto neg = detect_cycle(BigInt(-5));
  REQUIRE(neg);
  CHECK(neg->members == std::vector<BigInt>{-10, -5, -7});
  auto fixed = detect_cycle(BigInt(-1));
  REQUIRE(fixed);
  CHECK(fixed->members == std::vector<BigInt>{-1});
  auto far = detect_cycle(BigInt(27));
  REQUIRE(far);
  CHECK(far->members == std::vector<BigInt>{1, 2});
  auto neg17 = detect_cycle(BigInt(-17));
  REQUIRE(neg17);
  CHECK(neg17->length() == 11);
}

TEST_CASE("dense table agrees with the oracle and reports unresolved indices") {
  const StoppingTimeTable table(20000, 100000);
  for (std::int64_t n = 0; n <= 20000; ++n) CHECK(table.value(n) == *oracle::sigma(n));

  const StoppingTimeTable capped(10, 3);
  CHECK(capped.unresolved(10) == std::vector<std::int64_t>{3, 5, 6, 7, 9, 10});
  CHECK_THROWS_AS(capped.require_resolved(1, 10), UnresolvedError);
  CHECK_NOTHROW(capped.require_resolved(1, 2));
  try {
    capped.require_resolved(0, 10);
  } catch (const UnresolvedError& e) {
    CHECK(e.indices() == std::vector<std::int64_t>{3, 5, 6, 7, 9, 10});
  }
}

TEST_CASE("histogram counts") {
  const StoppingTimeTable table(100, 1000);
  const auto h = table.histogram(1, 100);
  std::map<std::uint64_t, std::uint64_t> expected;
  for (std::int64_t n = 1; n <= 100; ++n) ++expected[*oracle::sigma(n)];
  for (std::size_t k = 0; k < h.size(); ++k) CHECK(h[k] == expected[k]);
}

TEST_CASE("shared table is reused and thread-safe to read") {
  auto a = shared_stopping_table(1000);
  auto b = shared_stopping_table(500);
  CHECK(b->limit() >= 500);
  CHECK(a->value(27) == b->value(27));
}

TEST_CASE("iteration cap from the environment") {
  setenv("COLLATZ_CAP", "123", 1);
  CHECK(default_cap() == 123);
  setenv("COLLATZ_CAP", "garbage", 1);
  CHECK(default_cap() == kDefaultCap);
  unsetenv("COLLATZ_CAP");
  CHECK(default_cap() == kDefaultCap);
}
