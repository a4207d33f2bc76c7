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

#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/values.hpp"

namespace qcorr {
namespace {

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_unit_rows(const Matrix& rows, const char* name) {
  for (int i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (!(std::abs(norm - 1.0) <= tol::kUnitNorm)) {
      throw ArgumentError(std::string("VectorEnsemble: ") + name + "_" + std::to_string(i) +
                          " has norm " + describe(norm));
    }
  }
}

VerificationResult fail(std::string reason) {
  VerificationResult r;
  r.ok = false;
  r.reason = std::move(reason);
  return r;
}

VerificationResult pass() {
  VerificationResult r;
  r.ok = true;
  return r;
}

void require_size(const Matrix& gamma, int n, const char* what) {
  if (gamma.rows() != n || gamma.cols() != n) {
    throw DimensionError(std::string("verify_certificate: ") + what + " has size " +
                         std::to_string(n) + " but gamma is " + std::to_string(gamma.rows()) +
                         "x" + std::to_string(gamma.cols()));
  }
}

VerificationResult verify(const Matrix& gamma, const LocalDecomposition& c) {
  const int n = static_cast<int>(gamma.rows());
  Matrix rebuilt = Matrix::Zero(n, n);
  double total = 0.0;
  for (const auto& term : c.terms) {
    require_size(gamma, term.pair.n(), "sign pair");
    if (static_cast<int>(term.pair.t.size()) != n) {
      throw DimensionError("verify_certificate: sign pair halves differ in length");
    }
    if (!(term.weight > 0.0)) return fail("nonpositive weight " + describe(term.weight));
    for (auto x : term.pair.s) {
      if (x != 1 && x != -1) return fail("sign vector entry is not +-1");
    }
    for (auto x : term.pair.t) {
      if (x != 1 && x != -1) return fail("sign vector entry is not +-1");
    }
    rebuilt += term.weight * term.pair.outer();
    total += term.weight;
  }
  if (std::abs(total - c.total) > tol::kReconstruction) {
    return fail("stated total " + describe(c.total) + " differs from weight sum " +
                describe(total));
  }
  if (total > 1.0 + tol::kReconstruction) {
    return fail("weights sum to " + describe(total) + " > 1");
  }
  const double err = n == 0 ? 0.0 : (rebuilt - gamma).cwiseAbs().maxCoeff();
  if (err > tol::kReconstruction) {
    return fail("reconstruction error " + describe(err) + " exceeds 1e-8");
  }
  return pass();
}

VerificationResult verify(const Matrix& gamma, const LocalNormBound& c) {
  const double actual = linf_l2_norm(gamma);
  if (std::abs(actual - c.linf_l2_value) > 1e-12 * std::max(1.0, actual)) {
    return fail("stated l_inf(l_2) norm " + describe(c.linf_l2_value) + " but gamma has " +
                describe(actual));
  }
  if (std::sqrt(2.0) * actual > 1.0) {
    return fail("sqrt(2) * l_inf(l_2) norm = " + describe(std::sqrt(2.0) * actual) + " > 1");
  }
  return pass();
}

VerificationResult verify(const Matrix& gamma, const NonlocalExact& c) {
  require_size(gamma, c.witness.n(), "witness");
  const auto* exact = std::get_if<ExactBound>(&c.witness.classical_bound);
  if (exact == nullptr) return fail("witness does not carry an exact classical value");
  if (c.witness.n() > kMaxExactSize) {
    return fail("exact classical value cannot be re-derived above n = 20");
  }
  const double omega = classical_value_exact(c.witness.entries).omega;
  if (std::abs(omega - exact->omega) > 1e-9 * std::max(1.0, std::abs(omega))) {
    return fail("stated omega " + describe(exact->omega) + " but brute force gives " +
                describe(omega));
  }
  const double inner = frobenius_inner(c.witness.entries, gamma);
  if (std::abs(inner - c.inner_product) > 1e-9 * std::max(1.0, std::abs(inner))) {
    return fail("stated inner product " + describe(c.inner_product) + " but <A, gamma> = " +
                describe(inner));
  }
  if (!(inner > omega + tol::kStrictMargin)) {
    return fail("<A, gamma> = " + describe(inner) + " does not exceed omega(A) = " +
                describe(omega) + " by the margin");
  }
  return pass();
}

VerificationResult verify(const Matrix& gamma, const NonlocalChsh& c) {
  const int n = static_cast<int>(gamma.rows());
  auto in_range = [n](int k) { return k >= 0 && k < n; };
  if (!in_range(c.row_a) || !in_range(c.row_b) || !in_range(c.col_a) || !in_range(c.col_b)) {
    throw DimensionError("verify_certificate: CHSH index out of range");
  }
  if (c.row_a == c.row_b || c.col_a == c.col_b) return fail("CHSH indices must be distinct");
  const double value = chsh_block_value(gamma, c.row_a, c.row_b, c.col_a, c.col_b);
  if (std::abs(value - c.chsh_value) > 1e-9) {
    return fail("stated CHSH value " + describe(c.chsh_value) + " but the block gives " +
                describe(value));
  }
  if (!(value > 2.0 + tol::kStrictMargin)) {
    return fail("CHSH value " + describe(value) + " does not exceed 2");
  }
  return pass();
}

VerificationResult verify(const Matrix& gamma, const NonlocalStatistical& c) {
  require_size(gamma, c.witness.n(), "witness");
  VerificationResult r;
  r.rigorous = false;
  const double inner = frobenius_inner(c.witness.entries, gamma);
  if (std::abs(inner - c.inner_product) > 1e-9 * std::max(1.0, std::abs(inner))) {
    r.reason = "stated inner product " + describe(c.inner_product) + " but <A, gamma> = " +
               describe(inner);
    return r;
  }
  if (!(inner > c.threshold)) {
    r.reason = "inner product does not exceed the statistical threshold";
    return r;
  }
  r.ok = true;
  r.reason = "statistical: omega(A) is bounded only with high probability";
  return r;
}

}  // namespace

VectorEnsemble::VectorEnsemble(Matrix u, Matrix v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.rows() != v_.rows() || u_.cols() != v_.cols()) {
    throw DimensionError("VectorEnsemble: u and v must have the same shape");
  }
  if (u_.rows() < 1 || u_.cols() < 1) throw ArgumentError("VectorEnsemble: need n, m >= 1");
  check_unit_rows(u_, "u");
  check_unit_rows(v_, "v");
}

CorrelationMatrix::CorrelationMatrix(Matrix entries,
                                     std::shared_ptr<const VectorEnsemble> provenance)
    : entries_(std::move(entries)), provenance_(std::move(provenance)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw ArgumentError("CorrelationMatrix: must be square and nonempty");
  }
  const double largest = entries_.cwiseAbs().maxCoeff();
  if (!(largest <= 1.0 + tol::kEntryBound)) {
    throw ArgumentError("CorrelationMatrix: entry of absolute value " + describe(largest) +
                        " exceeds 1");
  }
  if (provenance_ && provenance_->n() != entries_.rows()) {
    throw DimensionError("CorrelationMatrix: provenance size mismatch");
  }
}

Matrix SignPair::outer() const {
  const int rows = static_cast<int>(s.size());
  const int cols = static_cast<int>(t.size());
  Matrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = static_cast<double>(s[i] * t[j]);
  }
  return out;
}

std::string_view certificate_kind(const Certificate& c) {
  struct Visitor {
    std::string_view operator()(const LocalDecomposition&) const { return "LocalDecomposition"; }
    std::string_view operator()(const LocalNormBound&) const { return "LocalNormBound"; }
    std::string_view operator()(const NonlocalExact&) const { return "NonlocalExact"; }
    std::string_view operator()(const NonlocalChsh&) const { return "NonlocalCHSH"; }
    std::string_view operator()(const NonlocalStatistical&) const {
      return "NonlocalStatistical";
    }
  };
  return std::visit(Visitor{}, c);
}

bool certifies_local(const Certificate& c) {
  return std::holds_alternative<LocalDecomposition>(c) ||
         std::holds_alternative<LocalNormBound>(c);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kLocalCertified:
      return "LocalCertified";
    case Verdict::kNonlocalCertified:
      return "NonlocalCertified";
    case Verdict::kStatisticallyNonlocal:
      return "StatisticallyNonlocal";
    case Verdict::kUndecided:
      return "Undecided";
  }
  return "Undecided";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::kLocalCertified, Verdict::kNonlocalCertified,
                    Verdict::kStatisticallyNonlocal, Verdict::kUndecided}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

CorrelationMatrix gram(std::shared_ptr<const VectorEnsemble> ensemble) {
  Matrix entries = ensemble->u() * ensemble->v().transpose();
  // Cauchy-Schwarz holds exactly; clip rounding overshoot of the last ulp.
  entries = entries.cwiseMax(-1.0).cwiseMin(1.0);
  return CorrelationMatrix(std::move(entries), std::move(ensemble));
}

CorrelationMatrix gram(const VectorEnsemble& ensemble) {
  return gram(std::make_shared<const VectorEnsemble>(ensemble));
}

double chsh_block_value(const Matrix& gamma, int i, int i2, int j, int j2) {
  const double a = gamma(i, j);
  const double b = gamma(i2, j);
  const double c = gamma(i, j2);
  const double d = gamma(i2, j2);
  return std::max({std::abs(a + b + c - d), std::abs(a + b - c + d), std::abs(a - b + c + d),
                   std::abs(-a + b + c + d)});
}

VerificationResult verify_certificate(const Matrix& gamma, const Certificate& c) {
  if (gamma.rows() != gamma.cols()) throw DimensionError("verify_certificate: gamma not square");
  return std::visit([&gamma](const auto& cert) { return verify(gamma, cert); }, c);
}

VerificationResult verify_certificate(const CorrelationMatrix& gamma, const Certificate& c) {
  return verify_certificate(gamma.entries(), c);
}

std::optional<LocalDecomposition> sign_ensemble_decomposition(const VectorEnsemble& ensemble) {
  const int n = ensemble.n();
  const int m = ensemble.m();
  const double scale = std::sqrt(static_cast<double>(m));
  LocalDecomposition out;
  for (int k = 0; k < m; ++k) {
    SignPair pair;
    pair.s.resize(n);
    pair.t.resize(n);
    for (int i = 0; i < n; ++i) {
      const double x = ensemble.u()(i, k) * scale;
      const double y = ensemble.v()(i, k) * scale;
      if (std::abs(std::abs(x) - 1.0) > 1e-12 || std::abs(std::abs(y) - 1.0) > 1e-12) {
        return std::nullopt;
      }
      pair.s[i] = x > 0 ? 1 : -1;
      pair.t[i] = y > 0 ? 1 : -1;
    }
    out.terms.push_back({1.0 / m, std::move(pair)});
  }
  out.total = 0.0;
  for (const auto& term : out.terms) out.total += term.weight;
  return out;
}

}  // namespace qcorr
