#pragma once

// Classical 3D trace map of the Fibonacci pulse sequence.  The half-traces
// x_k = Tr(M_k)/2 of successive Fibonacci products obey the polynomial map
//   (x, y, z) -> (y, z, 2yz - x)
// with conserved invariant C = x^2 + y^2 + z^2 - 2xyz - 1, which equals
// -(sin(theta1) cos(phi2))^2 for physical initial conditions (phi1 = pi/2
// convention), so -1 <= C <= 0 and orbits live on a 2D surface.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fibwalk/error.hpp"

namespace fibwalk {

struct TraceState {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline TraceState trace_step(const TraceState& s) noexcept {
  return {s.y, s.z, 2.0 * s.y * s.z - s.x};
}

// Exact inverse of trace_step: the predecessor of (x,y,z) is (2xy - z, x, y).
inline TraceState trace_step_back(const TraceState& s) noexcept {
  return {2.0 * s.x * s.y - s.z, s.x, s.y};
}

inline double invariant(const TraceState& s) noexcept {
  return s.x * s.x + s.y * s.y + s.z * s.z - 2.0 * s.x * s.y * s.z - 1.0;
}

// Half-traces (x1, y1, z1) = (Tr M1, Tr M2, Tr M2*M1)/2 for pulses with
// phi1 = pi/2:  x1 = cos(theta1), y1 = sin(phi2) cos(theta2),
// z1 = sin(phi2) cos(theta2 + theta1).
inline TraceState initial_condition(double theta1, double theta2, double phi2) {
  if (!std::isfinite(theta1) || !std::isfinite(theta2) || !std::isfinite(phi2)) {
    throw Error(ErrorCode::bad_parameter, "initial_condition: angles must be finite");
  }
  const double sp = std::sin(phi2);
  return {std::cos(theta1), sp * std::cos(theta2), sp * std::cos(theta2 + theta1)};
}

struct OrbitRecord {
  std::vector<TraceState> points;  // n+1 entries, points[0] = start
  double C0 = 0.0;
  double max_drift = 0.0;  // max |C_k - C0| along the orbit, always recorded
  std::optional<std::array<double, 3>> params;  // originating (theta1, theta2, phi2)
};

// Iterates the map n_steps times with no renormalization; invariant drift is
// measured and reported.  Coordinates beyond 1e6 (possible only for states
// far off any physical surface) raise a divergence signal with the step.
inline OrbitRecord orbit(const TraceState& start, std::int64_t n_steps) {
  if (n_steps < 0) {
    throw Error(ErrorCode::bad_parameter, "orbit: iteration count must be >= 0");
  }
  OrbitRecord record;
  record.C0 = invariant(start);
  record.points.reserve(static_cast<std::size_t>(n_steps) + 1);
  record.points.push_back(start);
  TraceState s = start;
  for (std::int64_t k = 1; k <= n_steps; ++k) {
    s = trace_step(s);
    if (std::abs(s.x) > 1e6 || std::abs(s.y) > 1e6 || std::abs(s.z) > 1e6) {
      throw Error(ErrorCode::divergence, "orbit: coordinate overflow at step " + std::to_string(k));
    }
    const double drift = std::abs(invariant(s) - record.C0);
    if (drift > record.max_drift) record.max_drift = drift;
    record.points.push_back(s);
  }
  return record;
}

struct SectionPoint {
  int orbit_id = 0;
  double x = 0.0, z = 0.0;
};

inline constexpr const char* kHemisphereConvention = "front: y >= 0; back: y < 0";

struct PoincareSection {
  std::vector<SectionPoint> back;   // y < 0
  std::vector<SectionPoint> front;  // y >= 0
  double invariant_value = 0.0;
  int n_orbits = 0;
  int n_iters = 0;
  int transient = 0;
  int grid_theta1 = 0, grid_theta2 = 0;  // sweep dimensions (theta1-major order)
  std::vector<std::array<double, 3>> orbit_params;  // (theta1, theta2, phi2) per orbit
  double max_drift = 0.0;
};

// Poincare section of the invariant surface at C: initial conditions are
// sampled through the (theta1, theta2, phi2) parametrization (exactly on the
// surface by construction), each orbit is iterated n_iters times, the first
// `transient` points are dropped, and the rest are projected to (x, z) and
// split by the sign of y.  The sweep uses cell centers; a jitter seed moves
// each sample uniformly within its cell, deterministically per seed.
inline PoincareSection poincare_section(double C, int n_orbits, int n_iters, int transient = 100,
                                        std::optional<std::uint64_t> jitter_seed = {}) {
  if (!std::isfinite(C) || C < -1.0 || C > 0.0) {
    throw Error(ErrorCode::invalid_invariant,
                "poincare_section: invariant must lie in [-1, 0], got " + std::to_string(C));
  }
  if (n_orbits < 1 || n_iters < 1 || transient < 0) {
    throw Error(ErrorCode::bad_parameter, "poincare_section: counts must be positive");
  }
  if (n_iters <= transient) {
    throw Error(ErrorCode::bad_parameter,
                "poincare_section: n_iters must exceed the transient burn-in");
  }

  PoincareSection section;
  section.invariant_value = C;
  section.n_orbits = n_orbits;
  section.n_iters = n_iters;
  section.transient = transient;

  if (C == -1.0) {
    // Unique solution: the fixed point (0,0,0) on the equator; it belongs to
    // both hemisphere closures and is emitted once per set.
    section.grid_theta1 = 1;
    section.grid_theta2 = 1;
    section.orbit_params.push_back({std::numbers::pi / 2.0, 0.0, 0.0});
    section.back.push_back({0, 0.0, 0.0});
    section.front.push_back({0, 0.0, 0.0});
    section.n_orbits = 1;
    return section;
  }

  const double s_min = std::sqrt(-C);
  const double lo = std::asin(s_min);
  const double hi = std::numbers::pi - lo;
  const int m1 = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_orbits))));
  const int m2 = (n_orbits + m1 - 1) / m1;
  section.grid_theta1 = m1;
  section.grid_theta2 = m2;

  std::mt19937_64 rng(jitter_seed.value_or(0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool jitter = jitter_seed.has_value();

  int orbit_id = 0;
  for (int i = 0; i < m1 && orbit_id < n_orbits; ++i) {
    for (int j = 0; j < m2 && orbit_id < n_orbits; ++j) {
      const double off1 = jitter ? unit(rng) : 0.5;
      const double off2 = jitter ? unit(rng) : 0.5;
      const double theta1 = lo + (i + off1) * (hi - lo) / m1;
      const double s1 = std::sin(theta1);
      const double ratio = s1 > 0.0 ? std::min(1.0, s_min / s1) : 1.0;
      const double phi2 = std::acos(ratio);
      const double theta2 = (j + off2) * std::numbers::pi / m2;

      TraceState s = initial_condition(theta1, theta2, phi2);
      const double c0 = invariant(s);
      for (int k = 0; k < n_iters; ++k) {
        s = trace_step(s);
        const double drift = std::abs(invariant(s) - c0);
        if (drift > section.max_drift) section.max_drift = drift;
        if (k < transient) continue;
        SectionPoint point{orbit_id, s.x, s.z};
        if (s.y < 0.0) {
          section.back.push_back(point);
        } else {
          section.front.push_back(point);
        }
      }
      section.orbit_params.push_back({theta1, theta2, phi2});
      ++orbit_id;
    }
  }
  return section;
}

}  // namespace fibwalk
