#include <catch2/catch_amalgamated.hpp>

#include "fibwalk/fibonacci_word.hpp"

using namespace fibwalk;

TEST_CASE("fibonacci numbers") {
  CHECK(fibonacci_number(1) == 1);
  CHECK(fibonacci_number(2) == 1);
  CHECK(fibonacci_number(3) == 2);
  CHECK(fibonacci_number(10) == 55);
  CHECK(fibonacci_number(25) == 75025);
  CHECK_THROWS_AS(fibonacci_number(0), Error);
  CHECK_THROWS_AS(fibonacci_number(93), Error);
}

TEST_CASE("fibonacci word base cases and small expansions") {
  CHECK(to_string(fibonacci_word(1)) == "1");
  CHECK(to_string(fibonacci_word(2)) == "2");
  CHECK(to_string(fibonacci_word(3)) == "12");
  CHECK(to_string(fibonacci_word(4)) == "212");
  CHECK(to_string(fibonacci_word(5)) == "12212");
  CHECK(fibonacci_word(5).generation_index == 5);
}

TEST_CASE("fibonacci word length law and concatenation recursion") {
  for (int k = 1; k <= 25; ++k) {
    CHECK(fibonacci_word(k).size() == fibonacci_number(k));
  }
  for (int k = 2; k <= 24; ++k) {
    const auto prev = fibonacci_word(k - 1);
    const auto cur = fibonacci_word(k);
    const auto next = fibonacci_word(k + 1);
    REQUIRE(next.size() == prev.size() + cur.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
      REQUIRE(next.letters[i] == prev.letters[i]);
    }
    for (std::size_t i = 0; i < cur.size(); ++i) {
      REQUIRE(next.letters[prev.size() + i] == cur.letters[i]);
    }
  }
}

TEST_CASE("fibonacci word errors") {
  try {
    fibonacci_word(0);
    FAIL("expected invalid_index");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_index);
  }
  try {
    fibonacci_word(30, 100);
    FAIL("expected budget_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
}

TEST_CASE("schedule_for_horizon prefixes") {
  SECTION("T=4 is a prefix of v_5") {
    const auto s = schedule_for_horizon(4);
    CHECK(to_string(s) == "1221");
    CHECK(s.generation_index == 5);
  }
  SECTION("T=0 is empty") {
    const auto s = schedule_for_horizon(0);
    CHECK(s.size() == 0);
  }
  SECTION("T=5 hits the Fibonacci horizon exactly") {
    const auto s = schedule_for_horizon(5);
    CHECK(to_string(s) == "12212");
    CHECK(s.generation_index == 5);
  }
  SECTION("prefix property for general T") {
    for (std::int64_t horizon : {1, 2, 3, 7, 20, 100, 1000}) {
      const auto s = schedule_for_horizon(horizon);
      REQUIRE(static_cast<std::int64_t>(s.size()) == horizon);
      REQUIRE(fibonacci_number(s.generation_index) >= static_cast<std::uint64_t>(horizon));
      if (s.generation_index > 1) {
        REQUIRE(fibonacci_number(s.generation_index - 1) < static_cast<std::uint64_t>(horizon));
      }
      const auto full = fibonacci_word(s.generation_index);
      for (std::size_t i = 0; i < s.size(); ++i) {
        REQUIRE(s.letters[i] == full.letters[i]);
      }
    }
  }
  SECTION("negative horizon rejected") {
    CHECK_THROWS_AS(schedule_for_horizon(-1), Error);
  }
}
