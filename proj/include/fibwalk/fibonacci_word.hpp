#pragma once

// Fibonacci coin schedules: the time-ordered word over {1,2} whose operator
// product realizes the composition rule U_{k+1} = U_k U_{k-1}.  Operator
// products act rightmost-first, so the word recursion reads
//   v_1 = "1",  v_2 = "2",  v_{k+1} = v_{k-1} ++ v_k   (concatenation in time
// order), giving v_3 = "12", v_4 = "212", v_5 = "12212", ...

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fibwalk/error.hpp"

namespace fibwalk {

// Coin labels over the alphabet {1,2}.  letters[t] selects the coin angle
// acting at time step t (letters[0] acts first).
struct CoinSchedule {
  std::vector<std::uint8_t> letters;
  int generation_index = 0;  // Fibonacci index K of the word this is (a prefix of)

  std::size_t size() const noexcept { return letters.size(); }
};

// F_1 = F_2 = 1, F_3 = 2, F_4 = 3, F_5 = 5, ...
inline std::uint64_t fibonacci_number(int k) {
  if (k < 1) {
    throw Error(ErrorCode::invalid_index, "fibonacci_number: index must be >= 1");
  }
  if (k > 92) {
    throw Error(ErrorCode::budget_exceeded, "fibonacci_number: index > 92 overflows 64 bits");
  }
  std::uint64_t prev = 1, cur = 1;  // F_1, F_2
  for (int i = 3; i <= k; ++i) {
    std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 26;

// Full Fibonacci word v_k, |v_k| = F_k.
inline CoinSchedule fibonacci_word(int k, std::uint64_t max_length = kDefaultWordBudget) {
  if (k < 1) {
    throw Error(ErrorCode::invalid_index, "fibonacci_word: index must be >= 1");
  }
  const std::uint64_t length = fibonacci_number(k);
  if (length > max_length) {
    throw Error(ErrorCode::budget_exceeded,
                "fibonacci_word: |v_" + std::to_string(k) + "| = " + std::to_string(length) +
                    " exceeds budget " + std::to_string(max_length));
  }
  std::vector<std::uint8_t> prev = {1};  // v_1
  if (k == 1) return {std::move(prev), 1};
  std::vector<std::uint8_t> cur = {2};  // v_2
  for (int i = 3; i <= k; ++i) {
    // v_i = v_{i-2} ++ v_{i-1}
    std::vector<std::uint8_t> next;
    next.reserve(prev.size() + cur.size());
    next.insert(next.end(), prev.begin(), prev.end());
    next.insert(next.end(), cur.begin(), cur.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {std::move(cur), k};
}

// First T letters of v_K, where K is the smallest index with F_K >= T.
// K is recorded in generation_index so output manifests can pin the
// truncation (prefixes of v_K do not converge as K grows).
inline CoinSchedule schedule_for_horizon(std::int64_t horizon,
                                         std::uint64_t max_length = kDefaultWordBudget) {
  if (horizon < 0) {
    throw Error(ErrorCode::bad_parameter, "schedule_for_horizon: horizon must be >= 0");
  }
  int k = 1;
  while (fibonacci_number(k) < static_cast<std::uint64_t>(horizon)) ++k;
  if (horizon == 0) return {{}, k};
  CoinSchedule word = fibonacci_word(k, max_length);
  word.letters.resize(static_cast<std::size_t>(horizon));
  return word;
}

inline std::string to_string(const CoinSchedule& schedule) {
  std::string text;
  text.reserve(schedule.letters.size());
  for (std::uint8_t letter : schedule.letters) {
    text.push_back(letter == 1 ? '1' : '2');
  }
  return text;
}

}  // namespace fibwalk
