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

#include "portsel/aggregation.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>

#include "portsel/errors.hpp"

namespace portsel {

namespace {

void check_n_star(std::size_t n_star, std::size_t n) {
  if (n_star < 1 || n_star > n) {
    throw UsageError("n* = " + std::to_string(n_star) +
                     " must lie in [1, " + std::to_string(n) + "]");
  }
}

SelectionResult finish(Method method, std::vector<std::size_t> ranking,
                       std::size_t n_star) {
  SelectionResult r;
  r.method = method;
  r.selected = select_top(ranking, n_star);
  r.ranking = std::move(ranking);
  return r;
}

SelectionResult fit_and_select(Method method, const WinMatrix& w,
                               std::size_t n_star, const SolverConfig& solver) {
  StrengthVector strengths = solve(w, solver);
  SelectionResult r = finish(method, rank_by_strength(strengths), n_star);
  r.scores = strengths.pi;
  r.strengths = std::move(strengths);
  return r;
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::ArithmeticMean:
      return "ArithmeticMean";
    case Method::Borda:
      return "Borda";
    case Method::Quicksort:
      return "Quicksort";
    case Method::BradleyTerry:
      return "BradleyTerry";
    case Method::TwoPhaseBT:
      return "TwoPhaseBT";
    case Method::TwoPhaseQuicksort:
      return "TwoPhaseQuicksort";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

bool ComparisonLedger::insert(Pair p) {
  p = Pair::of(p.first, p.second);
  if (p.second >= n_ || p.first == p.second) {
    throw UsageError("ledger pair out of range");
  }
  unsigned char& seen = seen_[p.first * n_ + p.second];
  if (seen) return false;
  seen = 1;
  order_.push_back(p);
  return true;
}

bool ComparisonLedger::contains(Pair p) const {
  p = Pair::of(p.first, p.second);
  if (p.second >= n_) return false;
  return seen_[p.first * n_ + p.second] != 0;
}

WinOracle::WinOracle(const EvaluationSample& sample, ProbabilityMode mode)
    : sample_(&sample),
      mode_(std::move(mode)),
      aggregated_(sample.projects()),
      ledger_(sample.projects()) {}

void WinOracle::ensure(std::size_t i, std::size_t j) {
  const Pair p = Pair::of(i, j);
  if (p.second >= size() || p.first == p.second) {
    throw UsageError("oracle pair out of range");
  }
  if (!ledger_.insert(p)) return;
  // Same arithmetic as aggregate_win_matrices over agent_win_matrix.
  double sum_ij = 0.0;
  double sum_ji = 0.0;
  for (std::size_t l = 0; l < sample_->agents(); ++l) {
    const double w =
        agent_pair_probability(*sample_, l, p.first, p.second, mode_);
    sum_ij += w;
    sum_ji += 1.0 - w;
  }
  const double agents = static_cast<double>(sample_->agents());
  aggregated_.set(p.first, p.second, sum_ij / agents, sum_ji / agents);
}

double WinOracle::operator()(std::size_t i, std::size_t j) {
  ensure(i, j);
  return aggregated_.weight(i, j);
}

void WinOracle::query(std::span<const Pair> pairs) {
  for (const Pair& p : pairs) ensure(p.first, p.second);
}

WinMatrix WinOracle::matrix_for(std::span<const Pair> pairs) const {
  for (const Pair& p : pairs) {
    if (!ledger_.contains(p)) {
      throw UsageError("oracle pair requested before it was queried");
    }
  }
  return aggregated_.restricted_to({pairs.begin(), pairs.end()});
}

std::vector<std::size_t> select_top(std::span<const std::size_t> ranking,
                                    std::size_t n_star) {
  check_n_star(n_star, ranking.size());
  std::vector<std::size_t> top(ranking.begin(),
                               ranking.begin() + static_cast<long>(n_star));
  std::sort(top.begin(), top.end());
  return top;
}

std::vector<Pair> cyclic_pairs(std::span<const std::size_t> order) {
  std::vector<Pair> out;
  const std::size_t n = order.size();
  if (n < 2) return out;
  for (std::size_t k = 0; k < n; ++k) {
    const Pair p = Pair::of(order[k], order[(k + 1) % n]);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

SelectionResult arithmetic_mean_select(const EvaluationSample& sample,
                                       std::size_t n_star) {
  const std::size_t n = sample.projects();
  check_n_star(n_star, n);
  std::vector<double> mean(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < sample.agents(); ++l) {
      mean[i] += sample.perceived(i, l);
    }
    mean[i] /= static_cast<double>(sample.agents());
  }
  SelectionResult r =
      finish(Method::ArithmeticMean, rank_by_strength(mean), n_star);
  r.comparisons = ComparisonLedger(n);
  r.scores = std::move(mean);
  return r;
}

SelectionResult borda_select(const EvaluationSample& sample,
                             std::size_t n_star) {
  const std::size_t n = sample.projects();
  check_n_star(n_star, n);
  std::vector<double> score(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t l = 0; l < sample.agents(); ++l) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return sample.perceived(a, l) > sample.perceived(b, l);
                     });
    // pos is 1-based, so the agent's favourite scores n - 1.
    for (std::size_t pos = 1; pos <= n; ++pos) {
      score[order[pos - 1]] += static_cast<double>(n - pos);
    }
  }
  SelectionResult r = finish(Method::Borda, rank_by_strength(score), n_star);
  r.comparisons = ComparisonLedger(n);
  r.scores = std::move(score);
  return r;
}

std::vector<std::size_t> quicksort_rank(
    WinOracle& oracle, std::optional<std::vector<std::size_t>> initial) {
  const std::size_t n = oracle.size();
  std::vector<std::size_t> idx;
  if (initial) {
    idx = std::move(*initial);
    std::vector<std::size_t> check = idx;
    std::sort(check.begin(), check.end());
    bool permutation = check.size() == n;
    for (std::size_t k = 0; permutation && k < n; ++k) {
      permutation = check[k] == k;
    }
    if (!permutation) {
      throw UsageError("quicksort initial order is not a permutation");
    }
  } else {
    idx.resize(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
  }

  using Index = std::ptrdiff_t;
  auto partition = [&](Index low, Index high) {
    Index i = low - 1;
    for (Index j = low; j < high; ++j) {
      if (oracle(idx[j], idx[high]) < 0.5) {
        ++i;
        std::swap(idx[i], idx[j]);
      }
    }
    std::swap(idx[i + 1], idx[high]);
    return i + 1;
  };
  auto recurse = [&](auto& self, Index low, Index high) -> void {
    if (low < high) {
      const Index p = partition(low, high);
      self(self, low, p - 1);
      self(self, p + 1, high);
    }
  };
  recurse(recurse, 0, static_cast<Index>(n) - 1);
  return idx;
}

SelectionResult quicksort_select(const EvaluationSample& sample,
                                 const ProbabilityMode& mode,
                                 std::size_t n_star) {
  check_n_star(n_star, sample.projects());
  WinOracle oracle(sample, mode);
  std::vector<std::size_t> order = quicksort_rank(oracle);
  std::reverse(order.begin(), order.end());
  SelectionResult r = finish(Method::Quicksort, std::move(order), n_star);
  r.comparisons = oracle.ledger();
  return r;
}

SelectionResult bt_full_select(const EvaluationSample& sample,
                               const ProbabilityMode& mode, std::size_t n_star,
                               const SolverConfig& solver) {
  const std::size_t n = sample.projects();
  check_n_star(n_star, n);
  if (n == 1) {
    SelectionResult r = finish(Method::BradleyTerry, {0}, n_star);
    r.comparisons = ComparisonLedger(n);
    return r;
  }
  WinOracle oracle(sample, mode);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) oracle(i, j);
  }
  SelectionResult r =
      fit_and_select(Method::BradleyTerry, oracle.matrix(), n_star, solver);
  r.comparisons = oracle.ledger();
  return r;
}

SelectionResult two_phase_bt_select(const EvaluationSample& sample,
                                    const ProbabilityMode& mode,
                                    std::size_t n_star, Rng& rng,
                                    const SolverConfig& solver) {
  const std::size_t n = sample.projects();
  check_n_star(n_star, n);
  if (n == 1) {
    SelectionResult r = finish(Method::TwoPhaseBT, {0}, n_star);
    r.comparisons = ComparisonLedger(n);
    return r;
  }
  WinOracle oracle(sample, mode);

  std::vector<std::size_t> shuffled(n);
  std::iota(shuffled.begin(), shuffled.end(), std::size_t{0});
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::vector<Pair> phase1 = cyclic_pairs(shuffled);
  oracle.query(phase1);
  const std::vector<std::size_t> approx =
      rank_by_strength(solve(oracle.matrix(), solver));

  std::vector<Pair> phase2 = cyclic_pairs(approx);
  oracle.query(phase2);
  // Unvisited pairs stay unsampled and drop out of the fit.
  SelectionResult r =
      fit_and_select(Method::TwoPhaseBT, oracle.matrix(), n_star, solver);
  r.comparisons = oracle.ledger();
  r.phase1_pairs = std::move(phase1);
  r.phase2_pairs = std::move(phase2);
  return r;
}

SelectionResult two_phase_quicksort_select(const EvaluationSample& sample,
                                           const ProbabilityMode& mode,
                                           std::size_t n_star,
                                           const SolverConfig& solver) {
  const std::size_t n = sample.projects();
  check_n_star(n_star, n);
  if (n == 1) {
    SelectionResult r = finish(Method::TwoPhaseQuicksort, {0}, n_star);
    r.comparisons = ComparisonLedger(n);
    return r;
  }
  WinOracle oracle(sample, mode);
  const std::vector<std::size_t> ascending = quicksort_rank(oracle);
  std::vector<Pair> phase1 = oracle.ledger().pairs();

  std::vector<Pair> phase2 = cyclic_pairs(ascending);
  oracle.query(phase2);
  SelectionResult r = fit_and_select(
      Method::TwoPhaseQuicksort, oracle.matrix_for(phase2), n_star, solver);
  r.comparisons = oracle.ledger();
  r.phase1_pairs = std::move(phase1);
  r.phase2_pairs = std::move(phase2);
  return r;
}

SelectionResult run_method(Method method, const EvaluationSample& sample,
                           const ProbabilityMode& mode, std::size_t n_star,
                           Rng& rng, const SolverConfig& solver) {
  switch (method) {
    case Method::ArithmeticMean:
      return arithmetic_mean_select(sample, n_star);
    case Method::Borda:
      return borda_select(sample, n_star);
    case Method::Quicksort:
      return quicksort_select(sample, mode, n_star);
    case Method::BradleyTerry:
      return bt_full_select(sample, mode, n_star, solver);
    case Method::TwoPhaseBT:
      return two_phase_bt_select(sample, mode, n_star, rng, solver);
    case Method::TwoPhaseQuicksort:
      return two_phase_quicksort_select(sample, mode, n_star, solver);
  }
  throw UsageError("unknown method");
}

}  // namespace portsel
