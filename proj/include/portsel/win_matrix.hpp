// Copyright 2026 The portsel Authors.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace portsel {

// Unordered project pair, always stored with first < second.
struct Pair {
  std::size_t first = 0;
  std::size_t second = 0;

  static Pair of(std::size_t a, std::size_t b) {
    return a < b ? Pair{a, b} : Pair{b, a};
  }
  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

// Square matrix of pairwise win weights with a mask of compared pairs.
//
// weight(i, j) is how strongly i beats j: a win count for tournaments or a
// probability for aggregated agent assessments. Pairs that were never
// compared carry weight 0 in both directions and are skipped by the solver.
class WinMatrix {
 public:
  WinMatrix() = default;
  explicit WinMatrix(std::size_t n);

  std::size_t size() const { return n_; }

  double weight(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  bool sampled(std::size_t i, std::size_t j) const {
    return mask_[i * n_ + j] != 0;
  }

  // Records a comparison between i and j with the two directed weights.
  void set(std::size_t i, std::size_t j, double w_ij, double w_ji);
  // Records a probability comparison: w(i, j) = p and w(j, i) = 1 - p.
  void set_probability(std::size_t i, std::size_t j, double p);
  // Forgets the comparison between i and j.
  void clear(std::size_t i, std::size_t j);

  // Number of sampled unordered pairs.
  std::size_t sampled_pairs() const;
  // Sampled unordered pairs in lexicographic order.
  std::vector<Pair> pairs() const;
  // True when every sampled pair satisfies w_ij + w_ji = 1 within tol.
  bool is_complementary(double tol = 1e-12) const;

  // Copy restricted to the given pairs; all other entries are unsampled.
  WinMatrix restricted_to(const std::vector<Pair>& keep) const;

  friend bool operator==(const WinMatrix&, const WinMatrix&) = default;

 private:
  void check_index(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::vector<double> w_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace portsel
