#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hypind/error.hpp"
#include "hypind/nibble/report.hpp"

namespace hypind {

inline double binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  double b = 1;
  for (std::size_t j = 1; j <= r; ++j) b = b * static_cast<double>(n - r + j) / static_cast<double>(j);
  return b;
}

/// Round parameters of the semi-random loop for a k-bounded hypergraph with
/// driving parameter T, kept as ln T so that astronomically large T work.
///
/// paper mode:     s = 0.001 ln T, last round 0.01 ln T, eps = 1/(1e6 ln T),
///                 rounds r = s, s+1, ... (real valued).
/// practical mode: s = 0, rounds r = 0 .. floor(ln T) - 1, eps = 0.05, and the
///                 cap factor r^((k-i)/(k-1)) uses r+1 so that round 0 does
///                 not zero the caps of sizes below k.
struct NibbleSchedule {
  Mode mode = Mode::practical;
  std::size_t k = 2;
  double ln_T = 0;
  double s = 0;
  double r_max = 0;
  double eps = 0.05;
  /// Lower and upper factors of the size window after preparation, relative
  /// to N/e^s.
  double window_low = 0.75;

  static NibbleSchedule make(std::size_t k, double ln_T, Mode mode, double practical_eps = 0.05) {
    if (k < 2) throw Error(Errc::invalid_argument, "schedule needs k >= 2");
    NibbleSchedule sc;
    sc.mode = mode;
    sc.k = k;
    sc.ln_T = ln_T;
    if (mode == Mode::paper) {
      sc.s = 0.001 * ln_T;
      sc.r_max = 0.01 * ln_T;
      sc.eps = ln_T > 0 ? 1.0 / (1e6 * ln_T) : 0.0;
    } else {
      sc.s = 0;
      sc.r_max = std::floor(ln_T) - 1;
      sc.eps = practical_eps;
    }
    return sc;
  }

  /// Rounds s, s+1, ... not exceeding r_max.
  std::vector<double> rounds() const {
    std::vector<double> out;
    for (double r = s; r <= r_max + 1e-12; r += 1.0) out.push_back(r);
    return out;
  }

  double w(double r) const {
    const double a = 1.0 / static_cast<double>(k - 1);
    return std::pow(r + 1.0, a) - std::pow(r, a);
  }

  /// ln t_r with t_r = (T / e^r) (1 + eps)^(r - s).
  double ln_t(double r) const { return ln_T - r + (r - s) * std::log1p(eps); }
  double t(double r) const { return std::exp(ln_t(r)); }

  double cap_index(double r) const { return mode == Mode::paper ? r : r + 1.0; }

  /// cap_i(r) = C(k-1, i-1) * r^((k-i)/(k-1)) * t_r^(i-1).
  double cap(std::size_t i, double r) const {
    const double e = static_cast<double>(k - i) / static_cast<double>(k - 1);
    const double idx = cap_index(r);
    const double factor = (k == i) ? 1.0 : std::pow(idx, e);
    return binomial(k - 1, i - 1) * factor * std::exp(static_cast<double>(i - 1) * ln_t(r));
  }

  /// Minimum |I| required of the step at round r on n vertices.
  double step_size_floor(double r, std::size_t n) const {
    return 0.99 / std::exp(1.0) * w(r) * static_cast<double>(n) / t(r);
  }
};

}  // namespace hypind
