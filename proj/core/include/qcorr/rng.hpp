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

#ifndef QCORR_RNG_HPP_
#define QCORR_RNG_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qcorr {

// Hierarchical seed: a 64-bit master seed plus a path of labels such as
// ("sweep", "n=300", "alpha=2.5", "trial=7", "u"). Every random object is a
// pure function of its SeedPath, so trials can run in any order on any
// thread and still replay bit-for-bit.
//
// The Philox key is derived as
//   h = splitmix64(master)
//   for each label: h = splitmix64(h ^ fnv1a64(label))
//   key = (low 32 bits of h, high 32 bits of h).
class SeedPath {
 public:
  explicit SeedPath(std::uint64_t master = 0) : master_(master) {}

  SeedPath child(std::string_view label) const;
  SeedPath child(std::uint64_t index) const;

  std::uint64_t master() const { return master_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // "master/label/label/..."; contains no commas or whitespace as long as the
  // labels do not.
  std::string to_string() const;

  std::array<std::uint32_t, 2> philox_key() const;

 private:
  std::uint64_t master_;
  std::vector<std::string> labels_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3"), counter-based.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Sequential stream over Philox blocks with counter (block, 0, 0, 0).
// Gaussians use the Box-Muller transform on two uniforms in (0, 1); the
// sine branch is cached and returned by the following call.
class RandomStream {
 public:
  using result_type = std::uint32_t;

  explicit RandomStream(const SeedPath& path);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }
  result_type operator()() { return next_u32(); }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  double gaussian();
  // +1 or -1 with probability 1/2.
  int sign();
  // Uniform integer in [0, bound), unbiased; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace qcorr

#endif  // QCORR_RNG_HPP_
