#pragma once

// Momentum-space representation of the walk.  With the spatial transform
//   F(phi,t) = sum_n e^{i n (phi - pi/2)} a_n(t),   G likewise for b_n,
// the pulse matrix
//   M(phi,theta) = i [ e^{-i phi} cos(theta)   e^{-i phi} sin(theta)
//                      e^{+i phi} sin(theta)  -e^{+i phi} cos(theta) ]
// lies in SU(2) (unit determinant, real trace) and generates the trace-map
// machinery: M = cos(theta) sin(phi) I + i u.sigma with
// u = (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)cos(phi)).
//
// The literal one-step momentum map of the position-space walk is not M but
// sigma_z * M (the coin carries a sigma_z, so each step has determinant -1):
//   T(phi,theta) = [  i e^{-i phi} cos(theta)   i e^{-i phi} sin(theta)
//                    -i e^{+i phi} sin(theta)   i e^{+i phi} cos(theta) ].
// Momentum evolution supports both kinds; equivalence with position space
// holds for the transfer kind, the trace identities for the pulse kind.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "fibwalk/error.hpp"
#include "fibwalk/fibonacci_word.hpp"
#include "fibwalk/walk.hpp"

namespace fibwalk {

// 2x2 complex matrix.  phi/theta carry the generating pulse's angles when
// built by coin_matrix/transfer_matrix; composites leave them NaN.
struct SpinMatrix {
  Complex m00{1.0, 0.0}, m01{}, m10{}, m11{1.0, 0.0};
  double phi = std::numeric_limits<double>::quiet_NaN();
  double theta = std::numeric_limits<double>::quiet_NaN();

  Complex trace() const noexcept { return m00 + m11; }
  Complex det() const noexcept { return m00 * m11 - m01 * m10; }

  SpinMatrix adjoint() const noexcept {
    SpinMatrix adj;
    adj.m00 = std::conj(m00);
    adj.m01 = std::conj(m10);
    adj.m10 = std::conj(m01);
    adj.m11 = std::conj(m11);
    return adj;
  }

  static SpinMatrix identity() noexcept { return SpinMatrix{}; }
};

inline SpinMatrix operator*(const SpinMatrix& lhs, const SpinMatrix& rhs) noexcept {
  SpinMatrix out;
  out.m00 = lhs.m00 * rhs.m00 + lhs.m01 * rhs.m10;
  out.m01 = lhs.m00 * rhs.m01 + lhs.m01 * rhs.m11;
  out.m10 = lhs.m10 * rhs.m00 + lhs.m11 * rhs.m10;
  out.m11 = lhs.m10 * rhs.m01 + lhs.m11 * rhs.m11;
  return out;
}

// SU(2) pulse M(phi,theta).
inline SpinMatrix coin_matrix(double phi, double theta) {
  if (!std::isfinite(phi) || !std::isfinite(theta)) {
    throw Error(ErrorCode::bad_parameter, "coin_matrix: angles must be finite");
  }
  const Complex i{0.0, 1.0};
  const Complex em = std::exp(Complex{0.0, -phi});
  const Complex ep = std::exp(Complex{0.0, phi});
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  SpinMatrix m;
  m.m00 = i * em * c;
  m.m01 = i * em * s;
  m.m10 = i * ep * s;
  m.m11 = -i * ep * c;
  m.phi = phi;
  m.theta = theta;
  return m;
}

// One-step momentum transfer matrix of the position-space walk (det -1).
inline SpinMatrix transfer_matrix(double phi, double theta) {
  if (!std::isfinite(phi) || !std::isfinite(theta)) {
    throw Error(ErrorCode::bad_parameter, "transfer_matrix: angles must be finite");
  }
  const Complex i{0.0, 1.0};
  const Complex em = std::exp(Complex{0.0, -phi});
  const Complex ep = std::exp(Complex{0.0, phi});
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  SpinMatrix m;
  m.m00 = i * em * c;
  m.m01 = i * em * s;
  m.m10 = -i * ep * s;
  m.m11 = i * ep * c;
  m.phi = phi;
  m.theta = theta;
  return m;
}

// Re(Tr M)/2.  SU(2) traces are real; an imaginary residue above 1e-12
// means the argument is not an SU(2) product.
inline double half_trace(const SpinMatrix& m) {
  const Complex tr = m.trace();
  if (std::abs(tr.imag()) >= 1e-12) {
    throw Error(ErrorCode::non_su2,
                "half_trace: |Im Tr| = " + std::to_string(std::abs(tr.imag())) + " exceeds 1e-12");
  }
  return 0.5 * tr.real();
}

// Decomposition M = identity_coeff * I + i * axis . sigma.  residual is the
// largest imaginary part left over; genuinely SU(2) inputs keep it ~ulp.
struct BlochForm {
  double identity_coeff = 0.0;
  std::array<double, 3> axis{};
  double residual = 0.0;
};

inline BlochForm bloch_form(const SpinMatrix& m) {
  const Complex i{0.0, 1.0};
  const Complex ca = 0.5 * (m.m00 + m.m11);
  const Complex ux = (m.m01 + m.m10) / (2.0 * i);
  const Complex uy = 0.5 * (m.m01 - m.m10);
  const Complex uz = (m.m00 - m.m11) / (2.0 * i);
  BlochForm out;
  out.identity_coeff = ca.real();
  out.axis = {ux.real(), uy.real(), uz.real()};
  out.residual = std::max({std::abs(ca.imag()), std::abs(ux.imag()), std::abs(uy.imag()),
                           std::abs(uz.imag())});
  return out;
}

struct FibonacciParams {
  double phi1 = std::numbers::pi / 2.0;
  double theta1 = 0.0;
  double phi2 = 0.0;
  double theta2 = 0.0;
};

// M_1 = M(phi1,theta1), M_2 = M(phi2,theta2), M_{k+1} = M_k * M_{k-1}.
inline SpinMatrix fibonacci_matrix(int k, const FibonacciParams& params) {
  if (k < 1) {
    throw Error(ErrorCode::invalid_index, "fibonacci_matrix: index must be >= 1");
  }
  SpinMatrix prev = coin_matrix(params.phi1, params.theta1);
  if (k == 1) return prev;
  SpinMatrix cur = coin_matrix(params.phi2, params.theta2);
  for (int i = 3; i <= k; ++i) {
    SpinMatrix next = cur * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Momentum components (F_j, G_j) on the grid phi_j.  The grid carries the
// pi/2 kernel offset, phi_j = wrap(pi/2 + 2*pi*j/N), so the transform below
// is an exact plain DFT for every N.
struct MomentumState {
  std::vector<Complex> F, G;
  std::vector<double> phi;

  std::size_t size() const noexcept { return F.size(); }

  // Parseval norm: sqrt(sum_j (|F_j|^2 + |G_j|^2) / N).
  double norm() const noexcept {
    double total = 0.0;
    for (std::size_t j = 0; j < F.size(); ++j) total += std::norm(F[j]) + std::norm(G[j]);
    return std::sqrt(total / static_cast<double>(F.size()));
  }
};

inline std::vector<double> momentum_grid(int n_sites) {
  if (n_sites < 1) {
    throw Error(ErrorCode::grid_mismatch, "momentum_grid: need at least one point");
  }
  std::vector<double> grid(static_cast<std::size_t>(n_sites));
  constexpr double pi = std::numbers::pi;
  for (int j = 0; j < n_sites; ++j) {
    double phi = pi / 2.0 + 2.0 * pi * j / n_sites;
    if (phi > pi) phi -= 2.0 * pi;  // fold into (-pi, pi]
    grid[static_cast<std::size_t>(j)] = phi;
  }
  return grid;
}

// Direct O(N^2) summation, F_j = sum_n e^{i n (phi_j - pi/2)} a_n.  Kept
// deliberately simple: this is the independent oracle side of the
// position/momentum equivalence check.
inline MomentumState to_momentum(const RingState& state) {
  const std::size_t n_sites = state.size();
  if (n_sites == 0 || state.b.size() != n_sites) {
    throw Error(ErrorCode::grid_mismatch, "to_momentum: malformed ring state");
  }
  MomentumState ms;
  ms.phi = momentum_grid(static_cast<int>(n_sites));
  ms.F.assign(n_sites, Complex{});
  ms.G.assign(n_sites, Complex{});
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (std::size_t j = 0; j < n_sites; ++j) {
    const double psi = ms.phi[j] - half_pi;
    Complex f{};
    Complex g{};
    for (std::size_t n = 0; n < n_sites; ++n) {
      const Complex kernel = std::polar(1.0, psi * static_cast<double>(n));
      f += kernel * state.a[n];
      g += kernel * state.b[n];
    }
    ms.F[j] = f;
    ms.G[j] = g;
  }
  return ms;
}

inline RingState to_position(const MomentumState& ms) {
  const std::size_t n_sites = ms.size();
  if (n_sites == 0 || ms.G.size() != n_sites || ms.phi.size() != n_sites) {
    throw Error(ErrorCode::grid_mismatch, "to_position: component/grid size mismatch");
  }
  RingState state;
  state.a.assign(n_sites, Complex{});
  state.b.assign(n_sites, Complex{});
  constexpr double half_pi = std::numbers::pi / 2.0;
  for (std::size_t n = 0; n < n_sites; ++n) {
    Complex a{};
    Complex b{};
    for (std::size_t j = 0; j < n_sites; ++j) {
      const Complex kernel = std::polar(1.0, -(ms.phi[j] - half_pi) * static_cast<double>(n));
      a += kernel * ms.F[j];
      b += kernel * ms.G[j];
    }
    state.a[n] = a / static_cast<double>(n_sites);
    state.b[n] = b / static_cast<double>(n_sites);
  }
  return state;
}

enum class MatrixKind {
  transfer,  // sigma_z * pulse: reproduces the position-space walk
  pulse,     // SU(2) pulse of the trace-map construction
};

// Applies the schedule letter by letter (letters[0] first) to every momentum
// component.  Norm is preserved by either kind; both are unitary.
inline MomentumState evolve_momentum(MomentumState ms, const CoinSchedule& word, double theta1,
                                     double theta2, MatrixKind kind = MatrixKind::transfer) {
  const std::size_t n = ms.size();
  if (n == 0 || ms.G.size() != n || ms.phi.size() != n) {
    throw Error(ErrorCode::grid_mismatch, "evolve_momentum: component/grid size mismatch");
  }
  auto make = (kind == MatrixKind::transfer) ? transfer_matrix : coin_matrix;
  std::vector<SpinMatrix> m1(n), m2(n);
  for (std::size_t j = 0; j < n; ++j) {
    m1[j] = make(ms.phi[j], theta1);
    m2[j] = make(ms.phi[j], theta2);
  }
  for (std::uint8_t letter : word.letters) {
    if (letter != 1 && letter != 2) {
      throw Error(ErrorCode::bad_parameter, "evolve_momentum: schedule letters must be 1 or 2");
    }
    const std::vector<SpinMatrix>& m = (letter == 1) ? m1 : m2;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex f = m[j].m00 * ms.F[j] + m[j].m01 * ms.G[j];
      const Complex g = m[j].m10 * ms.F[j] + m[j].m11 * ms.G[j];
      ms.F[j] = f;
      ms.G[j] = g;
    }
  }
  return ms;
}

}  // namespace fibwalk
