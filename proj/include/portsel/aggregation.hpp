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

// The six preference-aggregation methods. Each one turns an EvaluationSample
// into a best-first ranking, a top-n* selection and the ledger of unique
// project pairs whose aggregated win probability it had to compute.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "portsel/bradley_terry.hpp"
#include "portsel/portfolio.hpp"
#include "portsel/win_matrix.hpp"

namespace portsel {

enum class Method {
  ArithmeticMean,
  Borda,
  Quicksort,
  BradleyTerry,
  TwoPhaseBT,
  TwoPhaseQuicksort,
};

inline constexpr std::array<Method, 6> kAllMethods = {
    Method::ArithmeticMean, Method::Borda,      Method::Quicksort,
    Method::BradleyTerry,   Method::TwoPhaseBT, Method::TwoPhaseQuicksort,
};

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

// Set of unique unordered pairs; re-inserting a pair is a no-op.
class ComparisonLedger {
 public:
  ComparisonLedger() = default;
  explicit ComparisonLedger(std::size_t n) : n_(n), seen_(n * n, 0) {}

  // Returns true when the pair was new.
  bool insert(Pair p);
  bool contains(Pair p) const;
  std::size_t count() const { return order_.size(); }
  // In insertion order.
  const std::vector<Pair>& pairs() const { return order_; }

 private:
  std::size_t n_ = 0;
  std::vector<unsigned char> seen_;
  std::vector<Pair> order_;
};

// Lazy, memoized access to the aggregated win matrix W' of one sample. A
// pair is evaluated for all agents the first time it is asked for, and is
// recorded in the ledger at that moment.
class WinOracle {
 public:
  // Keeps a reference to `sample`, which must outlive the oracle.
  WinOracle(const EvaluationSample& sample, ProbabilityMode mode);
  WinOracle(EvaluationSample&&, ProbabilityMode) = delete;

  std::size_t size() const { return aggregated_.size(); }

  // w'_ij.
  double operator()(std::size_t i, std::size_t j);
  void query(std::span<const Pair> pairs);

  const ComparisonLedger& ledger() const { return ledger_; }
  // Every pair queried so far.
  const WinMatrix& matrix() const { return aggregated_; }
  // Only the given pairs, which must already have been queried.
  WinMatrix matrix_for(std::span<const Pair> pairs) const;

 private:
  void ensure(std::size_t i, std::size_t j);

  const EvaluationSample* sample_;
  ProbabilityMode mode_;
  WinMatrix aggregated_;
  ComparisonLedger ledger_;
};

struct SelectionResult {
  Method method = Method::ArithmeticMean;
  // Project indices, best first.
  std::vector<std::size_t> ranking;
  // First n* of the ranking, ascending index order.
  std::vector<std::size_t> selected;
  ComparisonLedger comparisons;

  // Per-project score the ranking was sorted by: aggregated value, Borda
  // score, or Bradley-Terry strength. Empty for Quicksort.
  std::vector<double> scores;
  std::optional<StrengthVector> strengths;
  // Pairs sampled in each phase of the two-phase methods.
  std::vector<Pair> phase1_pairs;
  std::vector<Pair> phase2_pairs;
};

// First n* entries of the ranking, sorted by index.
std::vector<std::size_t> select_top(std::span<const std::size_t> ranking,
                                    std::size_t n_star);

// ((p1, p2), (p2, p3), ..., (pn, p1)) as unordered pairs without duplicates.
std::vector<Pair> cyclic_pairs(std::span<const std::size_t> order);

SelectionResult arithmetic_mean_select(const EvaluationSample& sample,
                                       std::size_t n_star);
SelectionResult borda_select(const EvaluationSample& sample,
                             std::size_t n_star);

// Lomuto-partition Quicksort over W' with the last element as pivot; an item
// moves to the left side when W'[item, pivot] < 0.5. Returns the order worst
// first. The initial order defaults to 0..n-1.
std::vector<std::size_t> quicksort_rank(
    WinOracle& oracle,
    std::optional<std::vector<std::size_t>> initial = std::nullopt);

SelectionResult quicksort_select(const EvaluationSample& sample,
                                 const ProbabilityMode& mode,
                                 std::size_t n_star);
SelectionResult bt_full_select(const EvaluationSample& sample,
                               const ProbabilityMode& mode, std::size_t n_star,
                               const SolverConfig& solver = {});
// Phase 1 fits a random cycle, phase 2 adds the cycle of the phase-1 ranking
// and refits on both.
SelectionResult two_phase_bt_select(const EvaluationSample& sample,
                                    const ProbabilityMode& mode,
                                    std::size_t n_star, Rng& rng,
                                    const SolverConfig& solver = {});
// Same, but phase 1 is Quicksort and only the phase-2 cycle is refit.
SelectionResult two_phase_quicksort_select(const EvaluationSample& sample,
                                           const ProbabilityMode& mode,
                                           std::size_t n_star,
                                           const SolverConfig& solver = {});

// Dispatches on `method`; rng is only consumed by TwoPhaseBT.
SelectionResult run_method(Method method, const EvaluationSample& sample,
                           const ProbabilityMode& mode, std::size_t n_star,
                           Rng& rng, const SolverConfig& solver = {});

}  // namespace portsel
