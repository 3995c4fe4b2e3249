#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fibwalk/analysis.hpp"
#include "fibwalk/trace_map.hpp"

using namespace fibwalk;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;

SeriesRecord synthetic_power_law(double prefactor, double exponent, double t0, double t1,
                                 std::size_t n) {
  std::vector<double> times, values;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
    times.push_back(t);
    values.push_back(prefactor * std::pow(t, exponent));
  }
  return make_series(std::move(times), std::move(values));
}
}  // namespace

TEST_CASE("power-law fit on exact synthetic data") {
  SECTION("3 t^0.7 over [10, 1000]") {
    const auto fit = fit_power_law(synthetic_power_law(3.0, 0.7, 10.0, 1000.0, 200), 10.0, 1000.0);
    CHECK_THAT(fit.exponent, WithinAbs(0.7, 1e-10));
    CHECK_THAT(fit.prefactor, WithinAbs(3.0, 1e-8));
    CHECK_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
    CHECK(fit.n_points == 200);
  }
  SECTION("exponents across [-2, 2] recovered to 1e-10") {
    for (double p : {-2.0, -1.3, -0.5, 0.25, 1.0, 1.7, 2.0}) {
      const auto fit = fit_power_law(synthetic_power_law(1.7, p, 5.0, 500.0, 120), 5.0, 500.0);
      REQUIRE_THAT(fit.exponent, WithinAbs(p, 1e-10));
    }
  }
  SECTION("constant series has exponent 0") {
    std::vector<double> times, values;
    for (int i = 1; i <= 50; ++i) {
      times.push_back(i);
      values.push_back(2.5);
    }
    const auto fit = fit_power_law(make_series(times, values), 1.0, 50.0);
    CHECK_THAT(fit.exponent, WithinAbs(0.0, 1e-10));
    CHECK_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
  }
  SECTION("window restriction is honored") {
    const auto series = synthetic_power_law(2.0, 1.5, 1.0, 100.0, 100);
    const auto fit = fit_power_law(series, 20.0, 80.0);
    CHECK(fit.window_tmin == 20.0);
    CHECK(fit.window_tmax == 80.0);
    CHECK(fit.n_points < series.times.size());
    CHECK_THAT(fit.exponent, WithinAbs(1.5, 1e-10));
  }
}

TEST_CASE("power-law fit error paths") {
  const auto series = synthetic_power_law(1.0, 1.0, 1.0, 100.0, 100);
  SECTION("too few points in window") {
    try {
      fit_power_law(series, 50.0, 52.0);
      FAIL("expected insufficient_data");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::insufficient_data);
    }
  }
  SECTION("non-positive values in window") {
    std::vector<double> times, values;
    for (int i = 1; i <= 30; ++i) {
      times.push_back(i);
      values.push_back(i == 7 ? 0.0 : 1.0 * i);
    }
    SeriesRecord bad{times, values, {}};
    try {
      fit_power_law(bad, 1.0, 30.0);
      FAIL("expected log_domain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::log_domain);
    }
  }
  SECTION("series validation") {
    CHECK_THROWS_AS(make_series({1.0, 2.0}, {1.0}), Error);
    CHECK_THROWS_AS(make_series({2.0, 1.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(make_series({0.0, 1.0}, {1.0, 1.0}), Error);
  }
}

TEST_CASE("fitted exponent is invariant under subsampling") {
  // mild deterministic wobble so the subsampled grids differ pointwise
  std::vector<double> times, values;
  for (int i = 10; i <= 2000; ++i) {
    times.push_back(i);
    values.push_back(3.0 * std::pow(i, 0.7) * (1.0 + 0.01 * std::sin(0.37 * i)));
  }
  const auto base = make_series(times, values);
  const auto fit1 = fit_power_law(base, 10.0, 2000.0);
  for (int stride : {2, 4}) {
    std::vector<double> st, sv;
    for (std::size_t i = 0; i < times.size(); i += static_cast<std::size_t>(stride)) {
      st.push_back(times[i]);
      sv.push_back(values[i]);
    }
    const auto fit_s = fit_power_law(make_series(st, sv), 10.0, 2000.0);
    REQUIRE_THAT(fit_s.exponent, WithinAbs(fit1.exponent, 0.01));
  }
}

TEST_CASE("autocorrelation") {
  SECTION("rho(0) is exactly 1") {
    std::vector<double> v;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) v.push_back(u(rng));
    const auto rho = autocorrelation(v, 20);
    CHECK(rho[0] == 1.0);
  }
  SECTION("alternating series has rho(1) = -1 for even length") {
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(i % 2 == 0 ? 1.0 : -1.0);
    const auto rho = autocorrelation(v, 5);
    CHECK_THAT(rho[1], WithinAbs(-1.0, 1e-12));
    CHECK_THAT(rho[2], WithinAbs(1.0, 1e-12));
  }
  SECTION("constant series is degenerate") {
    std::vector<double> v(200, 2.5);
    try {
      autocorrelation(v, 5);
      FAIL("expected degenerate_series");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::degenerate_series);
    }
    // constant up to roundoff is degenerate too
    std::vector<double> w(200, 0.1);
    CHECK_THROWS_AS(autocorrelation(w, 5), Error);
  }
  SECTION("iid noise decorrelates") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> noise(10000);
    for (auto& v : noise) v = u(rng);
    const auto rho = autocorrelation(noise, 100);
    for (int tau = 1; tau <= 100; ++tau) {
      REQUIRE(std::abs(rho[static_cast<std::size_t>(tau)]) < 0.05);
    }
  }
  SECTION("length precondition") {
    std::vector<double> v(50, 0.0);
    for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
    CHECK_THROWS_AS(autocorrelation(v, 45), Error);
  }
  SECTION("matches a brute-force oracle within 1e-12 at N = 2000") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(2000);
    double running = 0.0;
    for (auto& x : v) {
      running = 0.9 * running + g(rng);
      x = running;
    }
    const int max_lag = 50;
    const auto rho = autocorrelation(v, max_lag);

    // independent route: long-double accumulation, reversed iteration order
    const std::size_t n = v.size();
    long double mean = 0.0L;
    for (std::size_t i = n; i-- > 0;) mean += v[i];
    mean /= static_cast<long double>(n);
    long double var = 0.0L;
    for (std::size_t i = n; i-- > 0;) var += (v[i] - mean) * (v[i] - mean);
    var /= static_cast<long double>(n);
    for (int tau = 0; tau <= max_lag; ++tau) {
      long double cov = 0.0L;
      for (std::size_t k = n - static_cast<std::size_t>(tau); k-- > 0;) {
        cov += (v[k] - mean) * (v[k + static_cast<std::size_t>(tau)] - mean);
      }
      cov /= static_cast<long double>(n - static_cast<std::size_t>(tau));
      REQUIRE_THAT(rho[static_cast<std::size_t>(tau)],
                   WithinAbs(static_cast<double>(cov / var), 1e-12));
    }
  }
}

TEST_CASE("decay report") {
  SECTION("fixed-point orbit is degenerate") {
    const auto rec = orbit({0.0, 0.0, 0.0}, 2500);
    try {
      decay_report(rec, 200);
      FAIL("expected degenerate_series");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::degenerate_series);
    }
  }
  SECTION("length precondition") {
    const auto rec = orbit(initial_condition(pi / 3, pi / 4, pi / 6), 500);
    CHECK_THROWS_AS(decay_report(rec, 200), Error);
  }
  SECTION("regular region (C near -1): strong recurrences in the window [50, 150]") {
    // theta1 = pi/2 maximizes sin(theta1); phi2 chosen so C = -0.99
    const double phi2 = std::acos(std::sqrt(0.99));
    const auto rec = orbit(initial_condition(pi / 2, pi / 4, phi2), 4096);
    CHECK_THAT(rec.C0, WithinAbs(-0.99, 1e-12));
    const auto report = decay_report(rec, 200);
    CHECK(report.rho[0] == 1.0);
    double peak = 0.0;
    for (int tau = 50; tau <= 150; ++tau) {
      peak = std::max(peak, std::abs(report.rho[static_cast<std::size_t>(tau)]));
    }
    CHECK(peak > 0.5);
    CHECK(report.power_fit.r_squared >= 0.0);
    CHECK(report.exponential_fit.r_squared <= 1.0);
  }
  SECTION("chaotic region (C = 0): correlations die out") {
    const auto rec = orbit(initial_condition(1.0, 0.9, pi / 2), 4096);
    CHECK_THAT(rec.C0, WithinAbs(0.0, 1e-12));
    const auto report = decay_report(rec, 200);
    double peak = 0.0;
    for (int tau = 50; tau <= 150; ++tau) {
      peak = std::max(peak, std::abs(report.rho[static_cast<std::size_t>(tau)]));
    }
    CHECK(peak < 0.2);
  }
  SECTION("report carries both fits over the envelope") {
    const double phi2 = std::acos(std::sqrt(0.5));
    const auto rec = orbit(initial_condition(pi / 2, 1.1, phi2), 4096);
    const auto report = decay_report(rec, 150);
    CHECK(report.envelope.size() >= 10);
    CHECK(std::isfinite(report.power_fit.exponent));
    CHECK(std::isfinite(report.exponential_fit.rate));
    CHECK(report.power_fit.r_squared >= 0.0);
    CHECK(report.power_fit.r_squared <= 1.0);
  }
}
