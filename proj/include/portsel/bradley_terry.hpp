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

// Bradley-Terry strength estimation from a WinMatrix.
//
// Three fixed-point schemes are provided: Zermelo's classic iteration,
// Newman's iteration, and Newman's iteration swept in Gauss-Seidel order.
// All of them keep strengths strictly positive: a raw update that would reach
// 0 (an item that never wins) or infinity (an item that never loses) is pinned
// to kMinStrength / kMaxStrength, and the result is reported as saturated.
// Strengths are renormalized to geometric mean 1 after every sweep.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "portsel/win_matrix.hpp"

namespace portsel {

enum class Scheme { Zermelo, Newman, NewmanGaussSeidel };

std::string_view scheme_name(Scheme scheme);

struct SolverConfig {
  Scheme scheme = Scheme::NewmanGaussSeidel;
  // Stop once max_i |pi'_i - pi_i| / pi_i drops below this.
  double tolerance = 1e-8;
  int max_iterations = 10000;

  void validate() const;
};

struct StrengthVector {
  std::vector<double> pi;
  bool converged = false;
  int iterations = 0;
  double final_delta = 0.0;
  // Some raw update hit a strength bound: the MLE does not exist and the
  // strengths only describe the direction of divergence.
  bool saturated = false;

  static StrengthVector uniform(std::size_t n);
  std::size_t size() const { return pi.size(); }
};

inline constexpr double kStrengthLogBound = 300.0;
extern const double kMinStrength;
extern const double kMaxStrength;

// Sum over compared i != j of w_ij * [ln pi_i - ln(pi_i + pi_j)].
double log_likelihood(const WinMatrix& w, std::span<const double> pi);

// Throws DegenerateInputError when some item takes part in no comparison with
// positive weight.
void require_connected_items(const WinMatrix& w);

// Raw (unnormalized) single sweeps. Entries are clamped to
// [kMinStrength, kMaxStrength].
std::vector<double> zermelo_update(const WinMatrix& w,
                                   std::span<const double> pi);
std::vector<double> newman_update(const WinMatrix& w,
                                  std::span<const double> pi);
// Items are visited in index order; item i sees the already updated
// strengths of items j < i and the old strengths of items j > i.
std::vector<double> newman_gauss_seidel_update(const WinMatrix& w,
                                               std::span<const double> pi);

// Rescales so the geometric mean is 1.
void normalize_geometric(std::vector<double>& pi);

// One sweep followed by normalization. iterations is incremented and
// final_delta holds the max relative change of the normalized vector.
StrengthVector zermelo_step(const WinMatrix& w, const StrengthVector& pi);
StrengthVector newman_step(const WinMatrix& w, const StrengthVector& pi);
StrengthVector newman_gauss_seidel_step(const WinMatrix& w,
                                        const StrengthVector& pi);

// Iterates the configured scheme from the uniform vector. Running out of
// iterations is reported through `converged`, not thrown.
StrengthVector solve(const WinMatrix& w, const SolverConfig& config = {});

// Same, starting from a caller-provided positive vector.
StrengthVector solve_from(const WinMatrix& w, std::vector<double> start,
                          const SolverConfig& config = {});

// Indices sorted by strength descending; ties go to the lower index.
std::vector<std::size_t> rank_by_strength(std::span<const double> pi);
inline std::vector<std::size_t> rank_by_strength(const StrengthVector& s) {
  return rank_by_strength(std::span<const double>(s.pi));
}

}  // namespace portsel
