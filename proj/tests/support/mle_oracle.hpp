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

// Test-only reference computations. Nothing here calls into the fixed-point
// solver: the MLE is found by coordinate ascent on the log-likelihood in
// log-strength coordinates, each coordinate maximized by bisection on its
// (monotone) partial derivative.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "portsel/win_matrix.hpp"

namespace portsel::testing {

// Direct evaluation of sum_{i != j} w_ij ln(pi_i / (pi_i + pi_j)).
inline double direct_log_likelihood(const WinMatrix& w,
                                    const std::vector<double>& pi) {
  double l = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (i != j) l += w.weight(i, j) * std::log(pi[i] / (pi[i] + pi[j]));
  return l;
}

// Normalized (geometric mean 1) maximum-likelihood strengths.
inline std::vector<double> coordinate_ascent_mle(const WinMatrix& w,
                                                 double tol = 1e-12,
                                                 int max_sweeps = 200000) {
  const std::size_t n = w.size();
  std::vector<double> theta(n, 0.0);
  auto slope = [&](std::size_t i, double t) {
    double g = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double total = w.weight(i, j) + w.weight(j, i);
      g += w.weight(i, j) - total / (1.0 + std::exp(theta[j] - t));
    }
    return g;
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lo = -60.0;
      double hi = 60.0;
      for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
        const double mid = 0.5 * (lo + hi);
        (slope(i, mid) > 0.0 ? lo : hi) = mid;
      }
      const double t = 0.5 * (lo + hi);
      change = std::max(change, std::abs(t - theta[i]));
      theta[i] = t;
    }
    if (change < tol) break;
  }
  double mean = 0.0;
  for (double t : theta) mean += t;
  mean /= static_cast<double>(n);
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = std::exp(theta[i] - mean);
  return pi;
}

// True when every item can reach every other along "beats" edges, the
// condition for a finite MLE to exist.
inline bool strongly_connected(const WinMatrix& w) {
  const std::size_t n = w.size();
  auto reach_all = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const double edge = forward ? w.weight(i, j) : w.weight(j, i);
        if (j != i && !seen[j] && edge > 0.0) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  };
  return reach_all(true) && reach_all(false);
}

// Random integer tournament, every pair played 1..max_games times, resampled
// until strongly connected (so no item is undefeated or winless).
template <typename Rng>
WinMatrix random_tournament(std::size_t n, Rng& rng, int max_games = 4) {
  std::uniform_int_distribution<int> games(1, max_games);
  while (true) {
    WinMatrix w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int g = games(rng);
        std::uniform_int_distribution<int> wins(0, g);
        const int k = wins(rng);
        w.set(i, j, k, g - k);
      }
    }
    if (strongly_connected(w)) return w;
  }
}

// All pairs sampled with w_ij uniform in (0, 1) and w_ji = 1 - w_ij.
template <typename Rng>
WinMatrix random_probability_matrix(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.02, 0.98);
  WinMatrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w.set_probability(i, j, u(rng));
  return w;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace portsel::testing
