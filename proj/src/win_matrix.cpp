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

#include "portsel/win_matrix.hpp"

#include <cmath>
#include <string>

#include "portsel/errors.hpp"

namespace portsel {

WinMatrix::WinMatrix(std::size_t n) : n_(n), w_(n * n, 0.0), mask_(n * n, 0) {
  if (n == 0) throw UsageError("WinMatrix: size must be positive");
}

void WinMatrix::check_index(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw UsageError("WinMatrix: index (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") out of range for size " +
                     std::to_string(n_));
  }
  if (i == j) throw UsageError("WinMatrix: diagonal entries are fixed at 0");
}

void WinMatrix::set(std::size_t i, std::size_t j, double w_ij, double w_ji) {
  check_index(i, j);
  if (!(w_ij >= 0.0) || !(w_ji >= 0.0) || std::isinf(w_ij) ||
      std::isinf(w_ji)) {
    throw UsageError("WinMatrix: weights must be finite and nonnegative");
  }
  w_[i * n_ + j] = w_ij;
  w_[j * n_ + i] = w_ji;
  mask_[i * n_ + j] = mask_[j * n_ + i] = 1;
}

void WinMatrix::set_probability(std::size_t i, std::size_t j, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw UsageError("WinMatrix: probability outside [0, 1]");
  }
  set(i, j, p, 1.0 - p);
}

void WinMatrix::clear(std::size_t i, std::size_t j) {
  check_index(i, j);
  w_[i * n_ + j] = w_[j * n_ + i] = 0.0;
  mask_[i * n_ + j] = mask_[j * n_ + i] = 0;
}

std::size_t WinMatrix::sampled_pairs() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) count += sampled(i, j) ? 1 : 0;
  }
  return count;
}

std::vector<Pair> WinMatrix::pairs() const {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (sampled(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

bool WinMatrix::is_complementary(double tol) const {
  for (const Pair& p : pairs()) {
    if (std::abs(weight(p.first, p.second) + weight(p.second, p.first) - 1.0) >
        tol) {
      return false;
    }
  }
  return true;
}

WinMatrix WinMatrix::restricted_to(const std::vector<Pair>& keep) const {
  WinMatrix out(n_);
  for (const Pair& p : keep) {
    check_index(p.first, p.second);
    if (sampled(p.first, p.second)) {
      out.set(p.first, p.second, weight(p.first, p.second),
              weight(p.second, p.first));
    }
  }
  return out;
}

}  // namespace portsel
