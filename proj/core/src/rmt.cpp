// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcorr/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {
namespace {

// After u = sqrt(x) and u = 2 - w^2 the integrand is smooth on the whole range:
//   f(C) = (2 / pi) int_0^{sqrt(2 - C)} w^2 sqrt(4 - w^2) dw.
double mp_integrand(double w) { return w * w * std::sqrt(4.0 - w * w); }

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double fa, double fm, double b, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = mp_integrand(lm);
  const double frm = mp_integrand(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return adaptive_simpson(a, fa, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(m, fm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double mp_fraction(double c, double tol) {
  if (!(c >= 0.0 && c <= 2.0)) {
    throw ArgumentError("mp_fraction: C must lie in [0, 2], got " + std::to_string(c));
  }
  if (!(tol > 0.0)) throw ArgumentError("mp_fraction: tolerance must be positive");
  const double upper = std::sqrt(2.0 - c);
  if (upper == 0.0) return 0.0;
  const double fa = mp_integrand(0.0);
  const double fm = mp_integrand(0.5 * upper);
  const double fb = mp_integrand(upper);
  // The outer factor 2/pi scales the error as well.
  const double inner_tol = tol * std::numbers::pi / 2.0;
  const double integral = adaptive_simpson(0.0, fa, fm, upper, fb,
                                           simpson(0.0, fa, fm, upper, fb), inner_tol, 50);
  return 2.0 / std::numbers::pi * integral;
}

double mp_inverse(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("mp_inverse: alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  double lo = 0.0;  // f(lo) >= alpha
  double hi = 2.0;  // f(hi) < alpha
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mp_fraction(mid, 1e-14) >= alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MpCurve MpCurve::tabulate(int points, double tolerance) {
  if (points < 2) throw ArgumentError("MpCurve::tabulate: need at least 2 points");
  MpCurve curve;
  curve.tolerance = tolerance;
  curve.samples.reserve(points);
  for (int k = 0; k < points; ++k) {
    const double c = k == points - 1 ? 2.0 : 2.0 * k / (points - 1);
    curve.samples.emplace_back(c, mp_fraction(c, tolerance));
  }
  return curve;
}

double theta(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ArgumentError("theta: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (alpha < 1e-6) {
    // 2 - (4/3)(1 - (1-a)^{3/2})/a = a/2 + a^2/12 + a^3/32 + ...
    return std::sqrt(alpha / 2.0 + alpha * alpha / 12.0 + alpha * alpha * alpha / 32.0);
  }
  const double one_minus_pow = -std::expm1(1.5 * std::log1p(-alpha));
  const double value = 2.0 - 4.0 / 3.0 * one_minus_pow / alpha;
  return std::sqrt(std::max(0.0, value));
}

double alpha0_gap(double alpha, double k_g_upper, double c_classical) {
  const double th = theta(alpha);
  return mp_inverse(alpha) - c_classical * (1.0 + (2.0 * th + th * th) * k_g_upper);
}

double alpha0_solve(double k_g_upper, double c_classical) {
  double lo = 1e-9;
  double hi = 0.5;
  const double g_lo = alpha0_gap(lo, k_g_upper, c_classical);
  const double g_hi = alpha0_gap(hi, k_g_upper, c_classical);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    throw NumericalError("alpha0_solve: no sign change on [1e-9, 0.5]");
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (alpha0_gap(mid, k_g_upper, c_classical) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

DecouplingReport decoupling_residual(const Matrix& g, int m) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n) throw DimensionError("decoupling_residual: G must be square");
  if (m < 1 || m > n) {
    throw ArgumentError("decoupling_residual: need 1 <= m <= n, got m = " + std::to_string(m));
  }
  const Matrix u = gram_schmidt_leading(g, m);
  const Matrix diff = g.leftCols(m) - std::sqrt(static_cast<double>(n)) * u;
  DecouplingReport report;
  report.n = n;
  report.m = m;
  report.alpha = static_cast<double>(m) / n;
  double worst = -1.0;
  for (int i = 0; i < n; ++i) {
    const double norm = diff.row(i).norm();
    if (norm > worst) {
      worst = norm;
      report.worst_row = i;
    }
  }
  report.residual = worst / std::sqrt(static_cast<double>(m));
  report.theta_alpha = theta(report.alpha);
  report.ratio = report.residual / report.theta_alpha;
  return report;
}

double empirical_singular_fraction(const Vector& sigma, int n, double c) {
  if (sigma.size() == 0) throw ArgumentError("empirical_singular_fraction: empty spectrum");
  const double cut = c * std::sqrt(static_cast<double>(n)) - 1e-12;
  Eigen::Index count = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) >= cut) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(sigma.size());
}

double empirical_singular_fraction(const CoupledSvdSample& sample, double c) {
  return empirical_singular_fraction(sample.sigma, sample.n(), c);
}

std::string_view to_string(ConcentrationKind kind) {
  switch (kind) {
    case ConcentrationKind::kGaussianNorm:
      return "gaussian_norm";
    case ConcentrationKind::kChernoff:
      return "chernoff";
    case ConcentrationKind::kProjection:
      return "projection";
  }
  return "unknown";
}

ConcentrationResult concentration_check(ConcentrationKind kind, const ConcentrationParams& params,
                                        std::int64_t trials, const SeedPath& seed) {
  if (trials < 1) throw ArgumentError("concentration_check: trials must be positive");
  ConcentrationResult out;
  out.kind = kind;
  out.trials = trials;

  switch (kind) {
    case ConcentrationKind::kGaussianNorm: {
      const int m = params.m;
      const double eps = params.epsilon;
      if (m < 1) throw ArgumentError("concentration_check: m must be positive");
      if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("concentration_check: need 0 < eps < 1");
      const double cut = std::sqrt(m / (1.0 - eps));
      for (std::int64_t k = 0; k < trials; ++k) {
        RandomStream rng(seed.child(static_cast<std::uint64_t>(k)));
        double sq = 0.0;
        for (int i = 0; i < m; ++i) {
          const double x = rng.gaussian();
          sq += x * x;
        }
        if (std::sqrt(sq) >= cut) ++out.hits;
      }
      out.bound = std::exp(-eps * eps * m / 4.0);
      break;
    }
    case ConcentrationKind::kChernoff: {
      const Vector a = params.a.size() > 0 ? params.a : Vector::Unit(1, 0);
      const double t = params.t;
      if (!(t > 1.0)) throw ArgumentError("concentration_check: need t > 1");
      const double norm_sq = a.squaredNorm();
      if (!(norm_sq > 0.0)) throw ArgumentError("concentration_check: a must be nonzero");
      for (std::int64_t k = 0; k < trials; ++k) {
        RandomStream rng(seed.child(static_cast<std::uint64_t>(k)));
        double sum = 0.0;
        for (Eigen::Index i = 0; i < a.size(); ++i) sum += a(i) * rng.gaussian();
        if (std::abs(sum) >= t) ++out.hits;
      }
      out.bound = 2.0 * std::exp(-t * t / (2.0 * norm_sq));
      break;
    }
    case ConcentrationKind::kProjection: {
      const int n = params.n;
      const int m = params.m;
      const double rho = params.rho;
      if (m < 1 || m > n) throw ArgumentError("concentration_check: need 1 <= m <= n");
      if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("concentration_check: need 0 < rho < 1");
      const double cut = std::sqrt(static_cast<double>(m) / n) / (1.0 - rho);
      for (std::int64_t k = 0; k < trials; ++k) {
        RandomStream rng(seed.child(static_cast<std::uint64_t>(k)));
        double head = 0.0;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
          const double x = rng.gaussian();
          total += x * x;
          if (i < m) head += x * x;
        }
        if (std::sqrt(head / total) >= cut) ++out.hits;
      }
      out.bound = std::exp(-rho * rho * m / 4.0);
      break;
    }
  }
  out.frequency = static_cast<double>(out.hits) / static_cast<double>(trials);
  const double p = std::min(out.bound, 1.0);
  out.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  out.pass = out.frequency <= out.bound + 3.0 * out.sigma;
  return out;
}

}  // namespace qcorr
