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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/values.hpp"

namespace qcorr {
namespace {

void check_exact_size(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(who) + ": matrix must be square");
  if (a.rows() < 1) throw ArgumentError(std::string(who) + ": empty matrix");
  if (a.rows() > kMaxExactSize) {
    throw SizeGuardError(std::string(who) + ": n = " + std::to_string(a.rows()) +
                         " exceeds the exact-enumeration limit of 20");
  }
}

// Bit i of mask set means s_i = -1. Bit 0 is never set.
SignPair sign_pair_from_mask(const Matrix& a, std::uint32_t mask) {
  const int n = static_cast<int>(a.rows());
  SignPair pair;
  pair.s.resize(n);
  pair.t.resize(n);
  for (int i = 0; i < n; ++i) pair.s[i] = (mask >> i) & 1u ? -1 : 1;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += pair.s[i] * a(i, j);
    pair.t[j] = col >= 0.0 ? 1 : -1;
  }
  return pair;
}

double evaluate(const Matrix& a, const SignPair& pair) {
  const int n = static_cast<int>(a.rows());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += a(i, j) * pair.t[j];
    total += pair.s[i] * row;
  }
  return total;
}

// Walks every s with s_0 = +1 in Gray-code order and calls
// visit(value, mask) with value = sum_j |sum_i a_ij s_i|.
template <typename Visit>
void enumerate_signs(const Matrix& a, Visit&& visit) {
  const int n = static_cast<int>(a.rows());
  // Column sums laid out contiguously; rows of a are contiguous too.
  std::vector<double> colsum(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) colsum[j] += a(i, j);
  }
  std::uint32_t mask = 0;
  auto value_now = [&] {
    double v = 0.0;
    for (int j = 0; j < n; ++j) v += std::abs(colsum[j]);
    return v;
  };
  visit(value_now(), mask);
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t g = 1; g < steps; ++g) {
    const int i = std::countr_zero(g) + 1;
    mask ^= (1u << i);
    const double factor = (mask >> i) & 1u ? -2.0 : 2.0;
    const double* row = a.row(i).data();
    for (int j = 0; j < n; ++j) colsum[j] += factor * row[j];
    visit(value_now(), mask);
  }
}

}  // namespace

ClassicalValue classical_value_exact(const Matrix& a) {
  check_exact_size(a, "classical_value_exact");
  const double scale = std::max(1.0, a.cwiseAbs().sum());
  double best = -1.0;
  std::uint32_t best_mask = 0;
  enumerate_signs(a, [&](double value, std::uint32_t mask) {
    if (value > best + 1e-13 * scale) {
      best = value;
      best_mask = mask;
    }
  });
  ClassicalValue out;
  out.argmax = sign_pair_from_mask(a, best_mask);
  out.omega = evaluate(a, out.argmax);
  return out;
}

ClassicalValue classical_value_exact(const BellWitness& a) {
  return classical_value_exact(a.entries);
}

std::vector<std::pair<double, SignPair>> best_sign_pairs(const Matrix& a, int k) {
  check_exact_size(a, "best_sign_pairs");
  if (k < 1) throw ArgumentError("best_sign_pairs: k must be >= 1");
  using Entry = std::pair<double, std::uint32_t>;
  // Min-heap on value; among equal values the larger mask is evicted first.
  auto worse = [](const Entry& x, const Entry& y) {
    return x.first > y.first || (x.first == y.first && x.second < y.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  enumerate_signs(a, [&](double value, std::uint32_t mask) {
    if (static_cast<int>(heap.size()) < k) {
      heap.emplace(value, mask);
    } else if (value > heap.top().first) {
      heap.pop();
      heap.emplace(value, mask);
    }
  });
  std::vector<Entry> kept;
  while (!heap.empty()) {
    kept.push_back(heap.top());
    heap.pop();
  }
  std::reverse(kept.begin(), kept.end());
  std::vector<std::pair<double, SignPair>> out;
  out.reserve(kept.size());
  for (const auto& [value, mask] : kept) {
    SignPair pair = sign_pair_from_mask(a, mask);
    const double exact = evaluate(a, pair);
    out.emplace_back(exact, std::move(pair));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  return out;
}

}  // namespace qcorr
