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

#ifndef QCORR_CORRELATIONS_HPP_
#define QCORR_CORRELATIONS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

// 2n unit vectors in R^m: row i of u() is u_i, row j of v() is v_j.
class VectorEnsemble {
 public:
  // Throws DimensionError on shape mismatch, ArgumentError if n or m is zero
  // or some row is not a unit vector within tol::kUnitNorm.
  VectorEnsemble(Matrix u, Matrix v);

  int n() const { return static_cast<int>(u_.rows()); }
  int m() const { return static_cast<int>(u_.cols()); }
  const Matrix& u() const { return u_; }
  const Matrix& v() const { return v_; }

 private:
  Matrix u_;
  Matrix v_;
};

// Square matrix of correlations gamma_ij in [-1, 1], optionally remembering
// the ensemble it was computed from.
class CorrelationMatrix {
 public:
  // Throws ArgumentError unless square, nonempty and |gamma_ij| <= 1 + tol.
  explicit CorrelationMatrix(Matrix entries,
                             std::shared_ptr<const VectorEnsemble> provenance = nullptr);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  const VectorEnsemble* provenance() const { return provenance_.get(); }

 private:
  Matrix entries_;
  std::shared_ptr<const VectorEnsemble> provenance_;
};

// What is known about omega(A) = max_{s,t} s^T A t for a witness A.
struct ExactBound {
  double omega = 0.0;
};
struct UpperBound {
  double bound = 0.0;
};
struct StatisticalBound {
  double threshold = 0.0;
  std::string note;
};
using ClassicalBound = std::variant<ExactBound, UpperBound, StatisticalBound>;

struct BellWitness {
  Matrix entries;
  ClassicalBound classical_bound;

  int n() const { return static_cast<int>(entries.rows()); }
};

// Deterministic strategy: gamma = s t^T with s, t in {-1, +1}^n.
struct SignPair {
  std::vector<std::int8_t> s;
  std::vector<std::int8_t> t;

  int n() const { return static_cast<int>(s.size()); }
  Matrix outer() const;
  bool operator==(const SignPair&) const = default;
  auto operator<=>(const SignPair&) const = default;
};

struct WeightedSignPair {
  double weight = 0.0;
  SignPair pair;
};

struct LocalDecomposition {
  std::vector<WeightedSignPair> terms;
  double total = 0.0;
};

struct LocalNormBound {
  double linf_l2_value = 0.0;
};

struct NonlocalExact {
  BellWitness witness;
  double inner_product = 0.0;
};

// CHSH violation on rows (row_a, row_b) and columns (col_a, col_b).
struct NonlocalChsh {
  int row_a = 0;
  int row_b = 1;
  int col_a = 0;
  int col_b = 1;
  double chsh_value = 0.0;
};

struct NonlocalStatistical {
  BellWitness witness;
  double inner_product = 0.0;
  double threshold = 0.0;
};

using Certificate = std::variant<LocalDecomposition, LocalNormBound, NonlocalExact,
                                 NonlocalChsh, NonlocalStatistical>;

std::string_view certificate_kind(const Certificate& c);
bool certifies_local(const Certificate& c);

enum class Verdict { kLocalCertified, kNonlocalCertified, kStatisticallyNonlocal, kUndecided };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct Classification {
  Verdict verdict = Verdict::kUndecided;
  std::optional<Certificate> certificate;
  // Name of the stage that produced the certificate, "none" otherwise.
  std::string certifier = "none";
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

struct VerificationResult {
  bool ok = false;
  // False for NonlocalStatistical: only the arithmetic is checked.
  bool rigorous = true;
  std::string reason;

  explicit operator bool() const { return ok; }
};

// gamma_ij = <u_i, v_j>, provenance attached.
CorrelationMatrix gram(std::shared_ptr<const VectorEnsemble> ensemble);
CorrelationMatrix gram(const VectorEnsemble& ensemble);

// Largest of the four CHSH combinations with an odd number of minus signs on
// the 2x2 block (rows i, i2; columns j, j2), in absolute value.
double chsh_block_value(const Matrix& gamma, int i, int i2, int j, int j2);

// Re-checks a certificate against gamma from the data it carries alone.
// Throws DimensionError if the certificate's size disagrees with gamma.
VerificationResult verify_certificate(const Matrix& gamma, const Certificate& c);
VerificationResult verify_certificate(const CorrelationMatrix& gamma, const Certificate& c);

// Convex decomposition of a sign ensemble (every coordinate +-1/sqrt(m)):
// gamma = (1/m) sum_k s_k t_k^T with s_k, t_k the k-th coordinate signs.
// Empty if some coordinate is not +-1/sqrt(m).
std::optional<LocalDecomposition> sign_ensemble_decomposition(const VectorEnsemble& ensemble);

}  // namespace qcorr

#endif  // QCORR_CORRELATIONS_HPP_
