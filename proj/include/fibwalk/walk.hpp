#pragma once

// Discrete-time quantum walk on the line.  The walker state is a two-spinor
// (a_n, b_n) per lattice site (upper = left-moving, lower = right-moving
// chirality); one time step with coin angle theta applies
//
//   a_n(t+1) =  a_{n+1}(t) cos(theta) + b_{n+1}(t) sin(theta)
//   b_n(t+1) =  a_{n-1}(t) sin(theta) - b_{n-1}(t) cos(theta)
//
// on a fixed pre-allocated lattice sized to the light cone, so the infinite
// line is represented exactly (no boundary effects, no truncation).

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "fibwalk/error.hpp"
#include "fibwalk/fibonacci_word.hpp"

namespace fibwalk {

using Complex = std::complex<double>;

// Coin angle in radians, reduced to [0, 2*pi).  Inputs already in range are
// preserved bit-exactly (fmod is exact there).
class CoinAngle {
public:
  explicit CoinAngle(double radians) {
    if (!std::isfinite(radians)) {
      throw Error(ErrorCode::bad_parameter, "CoinAngle: angle must be finite");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    value_ = std::fmod(radians, two_pi);
    if (value_ < 0.0) value_ += two_pi;
  }

  double radians() const noexcept { return value_; }

private:
  double value_;
};

class WalkerState;
struct EvolveResult;
EvolveResult evolve(const WalkerState& initial, const CoinSchedule& schedule, CoinAngle theta1,
                    CoinAngle theta2, std::int64_t record_every = 1);

// Spinor amplitudes over sites n = -half .. +half, with step counter.
// Invariants: unit norm (1e-12), zero amplitude outside the light cone
// |n| <= time, capacity >= 2*time + 1.
class WalkerState {
public:
  // Localized initial condition at n = 0 with chirality (alpha, beta).
  static WalkerState localized(int capacity, Complex alpha, Complex beta) {
    if (capacity < 1 || capacity % 2 == 0) {
      throw Error(ErrorCode::invalid_capacity,
                  "WalkerState: capacity must be odd and >= 1, got " + std::to_string(capacity));
    }
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > 1e-12) {
      throw Error(ErrorCode::normalization,
                  "WalkerState: chirality must satisfy |alpha|^2 + |beta|^2 = 1 within 1e-12");
    }
    WalkerState state;
    state.half_ = (capacity - 1) / 2;
    state.a_.assign(static_cast<std::size_t>(capacity), Complex{});
    state.b_.assign(static_cast<std::size_t>(capacity), Complex{});
    state.a_[static_cast<std::size_t>(state.half_)] = alpha;
    state.b_[static_cast<std::size_t>(state.half_)] = beta;
    state.time_ = 0;
    return state;
  }

  int capacity() const noexcept { return 2 * half_ + 1; }
  int time() const noexcept { return time_; }
  int min_site() const noexcept { return -half_; }
  int max_site() const noexcept { return half_; }

  // Left (upper) and right (lower) chirality amplitudes at site n.
  Complex a(int n) const { return a_[index(n)]; }
  Complex b(int n) const { return b_[index(n)]; }

  double norm() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) total += std::norm(a_[i]) + std::norm(b_[i]);
    return std::sqrt(total);
  }

  friend WalkerState step(const WalkerState& state, CoinAngle coin);
  friend EvolveResult evolve(const WalkerState& initial, const CoinSchedule& schedule,
                             CoinAngle theta1, CoinAngle theta2, std::int64_t record_every);

private:
  std::size_t index(int n) const {
    if (n < -half_ || n > half_) {
      throw Error(ErrorCode::invalid_index, "WalkerState: site " + std::to_string(n) + " out of range");
    }
    return static_cast<std::size_t>(n + half_);
  }

  // Writes the one-step image of src into dst (buffers pre-sized alike).
  // Returns the squared norm of the new state.
  static double step_into(const std::vector<Complex>& src_a, const std::vector<Complex>& src_b,
                          std::vector<Complex>& dst_a, std::vector<Complex>& dst_b, int half,
                          int time, double cos_theta, double sin_theta) {
    const int reach = time + 1;  // light cone after the step
    double norm2 = 0.0;
    for (int n = -reach; n <= reach; ++n) {
      const std::size_t i = static_cast<std::size_t>(n + half);
      Complex na{};
      Complex nb{};
      // Neighbors outside storage lie outside the old light cone and are zero.
      if (n + 1 <= half) {
        na = src_a[i + 1] * cos_theta + src_b[i + 1] * sin_theta;
      }
      if (n - 1 >= -half) {
        nb = src_a[i - 1] * sin_theta - src_b[i - 1] * cos_theta;
      }
      dst_a[i] = na;
      dst_b[i] = nb;
      norm2 += std::norm(na) + std::norm(nb);
    }
    return norm2;
  }

  std::vector<Complex> a_, b_;
  int half_ = 0;
  int time_ = 0;
};

// One time step of the walk.  Throws capacity_exceeded if the light cone
// after the step would not fit (amplitudes are never truncated silently).
inline WalkerState step(const WalkerState& state, CoinAngle coin) {
  const int reach = state.time_ + 1;
  if (reach > state.half_) {
    throw Error(ErrorCode::capacity_exceeded,
                "step: light cone " + std::to_string(2 * reach + 1) + " sites exceeds capacity " +
                    std::to_string(state.capacity()));
  }
  WalkerState next = state;
  const double c = std::cos(coin.radians());
  const double s = std::sin(coin.radians());
  WalkerState::step_into(state.a_, state.b_, next.a_, next.b_, state.half_, state.time_, c, s);
  next.time_ = state.time_ + 1;
  return next;
}

// Position distribution P_n = |a_n|^2 + |b_n|^2 restricted to the light cone;
// zero-probability sites are omitted.
inline std::vector<std::pair<int, double>> position_distribution(const WalkerState& state) {
  std::vector<std::pair<int, double>> dist;
  const int reach = std::min(state.time(), state.max_site());
  for (int n = -reach; n <= reach; ++n) {
    const double p = std::norm(state.a(n)) + std::norm(state.b(n));
    if (p != 0.0) dist.emplace_back(n, p);
  }
  return dist;
}

// sigma = sqrt(sum n^2 P_n - (sum n P_n)^2)
inline double standard_deviation(const std::vector<std::pair<int, double>>& distribution) {
  double m1 = 0.0, m2 = 0.0;
  for (const auto& [n, p] : distribution) {
    m1 += n * p;
    m2 += static_cast<double>(n) * n * p;
  }
  const double var = m2 - m1 * m1;
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

inline double standard_deviation(const WalkerState& state) {
  return standard_deviation(position_distribution(state));
}

struct EvolveResult {
  std::vector<std::pair<std::int64_t, double>> sigma;  // (t, sigma(t)) at sampled steps
  WalkerState final_state;
  double max_norm_drift = 0.0;  // max |  ||psi|| - 1 | observed; never renormalized
};

// Runs the schedule to completion, choosing theta1 for letter '1' and theta2
// for letter '2'.  sigma is recorded every record_every steps and always at
// the final step; an empty schedule yields an empty series.  Norm drift is
// measured at every step (it is an error signal: > 1e-9 aborts the run).
inline EvolveResult evolve(const WalkerState& initial, const CoinSchedule& schedule,
                           CoinAngle theta1, CoinAngle theta2, std::int64_t record_every) {
  if (record_every < 1) {
    throw Error(ErrorCode::bad_parameter, "evolve: record_every must be >= 1");
  }
  const std::int64_t steps = static_cast<std::int64_t>(schedule.size());
  EvolveResult result{{}, initial, 0.0};
  if (steps == 0) return result;

  WalkerState current = initial;
  WalkerState scratch = initial;
  const double c1 = std::cos(theta1.radians()), s1 = std::sin(theta1.radians());
  const double c2 = std::cos(theta2.radians()), s2 = std::sin(theta2.radians());

  for (std::int64_t t = 1; t <= steps; ++t) {
    const std::uint8_t letter = schedule.letters[static_cast<std::size_t>(t - 1)];
    if (letter != 1 && letter != 2) {
      throw Error(ErrorCode::bad_parameter, "evolve: schedule letters must be 1 or 2");
    }
    if (current.time() + 1 > current.max_site()) {
      throw Error(ErrorCode::capacity_exceeded,
                  "evolve: light cone exceeds capacity at step " + std::to_string(t));
    }
    const double c = letter == 1 ? c1 : c2;
    const double s = letter == 1 ? s1 : s2;
    const double norm2 = WalkerState::step_into(current.a_, current.b_, scratch.a_, scratch.b_,
                                                current.half_, current.time_, c, s);
    scratch.time_ = current.time_ + 1;
    std::swap(current, scratch);

    const double drift = std::abs(std::sqrt(norm2) - 1.0);
    if (drift > result.max_norm_drift) result.max_norm_drift = drift;
    if (drift > 1e-9) {
      throw Error(ErrorCode::normalization,
                  "evolve: norm drift " + std::to_string(drift) + " at step " + std::to_string(t));
    }
    if (t % record_every == 0 || t == steps) {
      result.sigma.emplace_back(t, standard_deviation(current));
    }
  }
  result.final_state = std::move(current);
  return result;
}

// Cyclic-lattice variant of the same one-step map (site indices mod N).
// Used by the momentum-space equivalence oracle, where shifts are exactly
// diagonal; production runs stay on the open line.
struct RingState {
  std::vector<Complex> a, b;

  std::size_t size() const noexcept { return a.size(); }

  double norm() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::norm(a[i]) + std::norm(b[i]);
    return std::sqrt(total);
  }
};

inline RingState ring_localized(int n_sites, Complex alpha, Complex beta) {
  if (n_sites < 1) {
    throw Error(ErrorCode::invalid_capacity, "ring_localized: need at least one site");
  }
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::normalization, "ring_localized: chirality must be normalized");
  }
  RingState state;
  state.a.assign(static_cast<std::size_t>(n_sites), Complex{});
  state.b.assign(static_cast<std::size_t>(n_sites), Complex{});
  state.a[0] = alpha;
  state.b[0] = beta;
  return state;
}

inline RingState ring_step(const RingState& state, CoinAngle coin) {
  const std::size_t n = state.size();
  if (n == 0 || state.b.size() != n) {
    throw Error(ErrorCode::grid_mismatch, "ring_step: malformed ring state");
  }
  const double c = std::cos(coin.radians());
  const double s = std::sin(coin.radians());
  RingState next;
  next.a.resize(n);
  next.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t right = (i + 1) % n;
    const std::size_t left = (i + n - 1) % n;
    next.a[i] = state.a[right] * c + state.b[right] * s;
    next.b[i] = state.a[left] * s - state.b[left] * c;
  }
  return next;
}

}  // namespace fibwalk
