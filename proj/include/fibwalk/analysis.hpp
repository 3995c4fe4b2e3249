#pragma once

// Series diagnostics: log-log power-law fits of spreading series sigma(t),
// normalized autocorrelation of orbit coordinates, and the two-model decay
// report (power law vs exponential on the |rho| envelope).  Classification
// is descriptive; no hard regime labels are assigned.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibwalk/error.hpp"
#include "fibwalk/trace_map.hpp"

namespace fibwalk {

struct SeriesRecord {
  std::vector<double> times;  // strictly increasing, positive
  std::vector<double> values;
  std::map<std::string, std::string> metadata;
};

inline SeriesRecord make_series(std::vector<double> times, std::vector<double> values,
                                std::map<std::string, std::string> metadata = {}) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::invalid_series, "make_series: times/values length mismatch");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] <= 0.0) {
      throw Error(ErrorCode::invalid_series, "make_series: times must be positive and finite");
    }
    if (i > 0 && times[i] <= times[i - 1]) {
      throw Error(ErrorCode::invalid_series, "make_series: times must be strictly increasing");
    }
  }
  return {std::move(times), std::move(values), std::move(metadata)};
}

struct FitResult {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  double window_tmin = 0.0, window_tmax = 0.0;
  std::size_t n_points = 0;
};

namespace detail {

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += resid * resid;
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  // A constant series is fit perfectly by a constant line.
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, std::min(1.0, 1.0 - ss_res / ss_tot)) : 1.0;
  return fit;
}

}  // namespace detail

// Least-squares line through (log t, log v) over t in [t_min, t_max];
// exponent = slope, prefactor = exp(intercept).
inline FitResult fit_power_law(const SeriesRecord& series, double t_min, double t_max) {
  if (series.times.size() != series.values.size()) {
    throw Error(ErrorCode::invalid_series, "fit_power_law: times/values length mismatch");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (i > 0 && t <= series.times[i - 1]) {
      throw Error(ErrorCode::invalid_series, "fit_power_law: times must be strictly increasing");
    }
    if (t < t_min || t > t_max) continue;
    const double v = series.values[i];
    if (!(t > 0.0) || !(v > 0.0)) {
      throw Error(ErrorCode::log_domain,
                  "fit_power_law: non-positive value in window at t = " + std::to_string(t));
    }
    xs.push_back(std::log(t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 10) {
    throw Error(ErrorCode::insufficient_data,
                "fit_power_law: need >= 10 points in window, found " + std::to_string(xs.size()));
  }
  const detail::LinearFit line = detail::linear_fit(xs, ys);
  FitResult fit;
  fit.exponent = line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  fit.window_tmin = t_min;
  fit.window_tmax = t_max;
  fit.n_points = xs.size();
  return fit;
}

// Normalized autocovariance with (N - tau) lag normalization:
//   rho(tau) = [ sum_k (v_k - m)(v_{k+tau} - m) / (N - tau) ] / (sum_k (v_k - m)^2 / N)
// rho(0) = 1 exactly.  Returns rho[0..max_lag].
inline std::vector<double> autocorrelation(const std::vector<double>& values, int max_lag) {
  if (max_lag < 0) {
    throw Error(ErrorCode::bad_parameter, "autocorrelation: max_lag must be >= 0");
  }
  const std::size_t n = values.size();
  if (n <= static_cast<std::size_t>(max_lag) + 10) {
    throw Error(ErrorCode::insufficient_data,
                "autocorrelation: series length must exceed max_lag + 10");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = values[i] - mean;

  auto raw = [&](int lag) {
    double acc = 0.0;
    for (std::size_t k = 0; k + static_cast<std::size_t>(lag) < n; ++k) {
      acc += centered[k] * centered[k + static_cast<std::size_t>(lag)];
    }
    return acc / static_cast<double>(n - static_cast<std::size_t>(lag));
  };

  const double variance = raw(0);
  if (!(variance > 0.0) || variance < 1e-30 * (1.0 + mean * mean)) {
    throw Error(ErrorCode::degenerate_series, "autocorrelation: series variance is zero");
  }
  std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
  for (int lag = 0; lag <= max_lag; ++lag) {
    rho[static_cast<std::size_t>(lag)] = raw(lag) / variance;
  }
  return rho;
}

inline std::vector<double> autocorrelation(const SeriesRecord& series, int max_lag) {
  return autocorrelation(series.values, max_lag);
}

struct ExpFitResult {
  double rate = 0.0;  // rho ~ prefactor * exp(-rate * tau)
  double prefactor = 0.0;
  double r_squared = 0.0;
};

struct DecayReport {
  std::vector<double> rho;                          // correlogram, rho[tau]
  std::vector<std::pair<double, double>> envelope;  // (tau, |rho|) fit support
  FitResult power_fit;                              // log|rho| vs log tau
  ExpFitResult exponential_fit;                     // log|rho| vs tau
};

// Correlogram of a coordinate series plus competing power-law/exponential
// fits of the |rho| envelope (local maxima; all positive |rho| when there
// are too few maxima).
inline DecayReport decay_report_series(const std::vector<double>& xs, int max_lag) {
  if (max_lag < 1) {
    throw Error(ErrorCode::bad_parameter, "decay_report: max_lag must be >= 1");
  }
  if (xs.size() < static_cast<std::size_t>(max_lag) * 10) {
    throw Error(ErrorCode::insufficient_data, "decay_report: series length must be >= 10 * max_lag");
  }
  DecayReport report;
  report.rho = autocorrelation(xs, max_lag);

  auto abs_rho = [&](int tau) { return std::abs(report.rho[static_cast<std::size_t>(tau)]); };
  for (int tau = 1; tau + 1 <= max_lag; ++tau) {
    if (abs_rho(tau) > 0.0 && abs_rho(tau) >= abs_rho(tau - 1) && abs_rho(tau) >= abs_rho(tau + 1)) {
      report.envelope.emplace_back(static_cast<double>(tau), abs_rho(tau));
    }
  }
  if (report.envelope.size() < 10) {
    report.envelope.clear();
    for (int tau = 1; tau <= max_lag; ++tau) {
      if (abs_rho(tau) > 0.0) report.envelope.emplace_back(static_cast<double>(tau), abs_rho(tau));
    }
  }
  if (report.envelope.size() < 10) {
    throw Error(ErrorCode::insufficient_data, "decay_report: fewer than 10 usable envelope points");
  }

  std::vector<double> taus, mags;
  taus.reserve(report.envelope.size());
  mags.reserve(report.envelope.size());
  for (const auto& [tau, mag] : report.envelope) {
    taus.push_back(tau);
    mags.push_back(mag);
  }
  report.power_fit = fit_power_law(make_series(taus, mags), taus.front(), taus.back());

  std::vector<double> log_mags(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) log_mags[i] = std::log(mags[i]);
  const detail::LinearFit line = detail::linear_fit(taus, log_mags);
  report.exponential_fit.rate = -line.slope;
  report.exponential_fit.prefactor = std::exp(line.intercept);
  report.exponential_fit.r_squared = line.r_squared;
  return report;
}

inline DecayReport decay_report(const OrbitRecord& orbit, int max_lag) {
  std::vector<double> xs;
  xs.reserve(orbit.points.size());
  for (const TraceState& p : orbit.points) xs.push_back(p.x);
  return decay_report_series(xs, max_lag);
}

}  // namespace fibwalk
