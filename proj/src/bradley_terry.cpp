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

#include "portsel/bradley_terry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "portsel/errors.hpp"

namespace portsel {

const double kMinStrength = std::exp(-kStrengthLogBound);
const double kMaxStrength = std::exp(kStrengthLogBound);

namespace {

// Compressed adjacency of the sampled pairs, built once per solve.
struct Neighbor {
  std::size_t j;
  double w_ij;
  double w_ji;
};

class Comparisons {
 public:
  explicit Comparisons(const WinMatrix& w) : n_(w.size()), offsets_(n_ + 1) {
    for (std::size_t i = 0; i < n_; ++i) {
      offsets_[i] = edges_.size();
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != i && w.sampled(i, j)) {
          edges_.push_back({j, w.weight(i, j), w.weight(j, i)});
        }
      }
    }
    offsets_[n_] = edges_.size();
  }

  std::size_t size() const { return n_; }
  std::span<const Neighbor> of(std::size_t i) const {
    return {edges_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> edges_;
};

double clamp_strength(double x) {
  if (!(x > kMinStrength)) return kMinStrength;
  if (x > kMaxStrength) return kMaxStrength;
  return x;
}

void check_strengths(const WinMatrix& w, std::span<const double> pi) {
  if (pi.size() != w.size()) {
    throw UsageError("strength vector has " + std::to_string(pi.size()) +
                     " entries for a " + std::to_string(w.size()) +
                     "-item win matrix");
  }
  for (double p : pi) {
    if (!(p > 0.0) || std::isinf(p)) {
      throw UsageError("strengths must be finite and strictly positive");
    }
  }
}

void zermelo_kernel(const Comparisons& c, std::span<const double> pi,
                    std::span<double> out) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    double wins = 0.0;
    double denom = 0.0;
    for (const Neighbor& e : c.of(i)) {
      wins += e.w_ij;
      denom += (e.w_ij + e.w_ji) / (pi[i] + pi[e.j]);
    }
    out[i] = clamp_strength(wins / denom);
  }
}

// With `in_place` set, out aliases the working vector so later items see the
// already updated strengths of earlier ones.
void newman_kernel(const Comparisons& c, std::span<const double> pi,
                   std::span<double> out, bool in_place) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::span<const double> cur = in_place ? std::span<const double>(out) : pi;
    const double pi_i = cur[i];
    double num = 0.0;
    double denom = 0.0;
    for (const Neighbor& e : c.of(i)) {
      const double sum = pi_i + cur[e.j];
      num += e.w_ij * cur[e.j] / sum;
      denom += e.w_ji / sum;
    }
    out[i] = clamp_strength(num / denom);
  }
}

void sweep(Scheme scheme, const Comparisons& c, std::span<const double> pi,
           std::vector<double>& out) {
  out.resize(pi.size());
  switch (scheme) {
    case Scheme::Zermelo:
      zermelo_kernel(c, pi, out);
      break;
    case Scheme::Newman:
      newman_kernel(c, pi, out, false);
      break;
    case Scheme::NewmanGaussSeidel:
      std::copy(pi.begin(), pi.end(), out.begin());
      newman_kernel(c, pi, out, true);
      break;
  }
}

bool any_saturated(std::span<const double> raw) {
  return std::any_of(raw.begin(), raw.end(), [](double x) {
    return x <= kMinStrength || x >= kMaxStrength;
  });
}

double max_relative_change(std::span<const double> before,
                           std::span<const double> after) {
  double delta = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    delta = std::max(delta, std::abs(after[i] - before[i]) / before[i]);
  }
  return delta;
}

std::vector<double> raw_update(Scheme scheme, const WinMatrix& w,
                               std::span<const double> pi) {
  check_strengths(w, pi);
  require_connected_items(w);
  std::vector<double> out;
  sweep(scheme, Comparisons(w), pi, out);
  return out;
}

StrengthVector step(Scheme scheme, const WinMatrix& w,
                    const StrengthVector& in) {
  StrengthVector out;
  out.pi = raw_update(scheme, w, in.pi);
  out.saturated = any_saturated(out.pi);
  normalize_geometric(out.pi);
  out.iterations = in.iterations + 1;
  out.final_delta = max_relative_change(in.pi, out.pi);
  return out;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Zermelo:
      return "Zermelo";
    case Scheme::Newman:
      return "Newman";
    case Scheme::NewmanGaussSeidel:
      return "NewmanGaussSeidel";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw UsageError("solver tolerance must be > 0");
  if (max_iterations < 1) throw UsageError("solver max_iterations must be >= 1");
}

StrengthVector StrengthVector::uniform(std::size_t n) {
  StrengthVector s;
  s.pi.assign(n, 1.0);
  return s;
}

double log_likelihood(const WinMatrix& w, std::span<const double> pi) {
  check_strengths(w, pi);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (i == j || !w.sampled(i, j)) continue;
      total += w.weight(i, j) * (std::log(pi[i]) - std::log(pi[i] + pi[j]));
    }
  }
  return total;
}

void require_connected_items(const WinMatrix& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j != i && w.sampled(i, j)) total += w.weight(i, j) + w.weight(j, i);
    }
    if (!(total > 0.0)) {
      throw DegenerateInputError("item " + std::to_string(i) +
                                 " takes part in no comparison");
    }
  }
}

std::vector<double> zermelo_update(const WinMatrix& w,
                                   std::span<const double> pi) {
  return raw_update(Scheme::Zermelo, w, pi);
}

std::vector<double> newman_update(const WinMatrix& w,
                                  std::span<const double> pi) {
  return raw_update(Scheme::Newman, w, pi);
}

std::vector<double> newman_gauss_seidel_update(const WinMatrix& w,
                                               std::span<const double> pi) {
  return raw_update(Scheme::NewmanGaussSeidel, w, pi);
}

void normalize_geometric(std::vector<double>& pi) {
  if (pi.empty()) return;
  // Product kept as mantissa * 2^exponent so it cannot overflow; one log per
  // call instead of one per entry.
  double mantissa = 1.0;
  long exponent = 0;
  for (double p : pi) {
    int e = 0;
    mantissa *= std::frexp(p, &e);
    exponent += e;
    mantissa = std::frexp(mantissa, &e);
    exponent += e;
  }
  const double mean_log =
      (std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2) /
      static_cast<double>(pi.size());
  const double scale = std::exp(-mean_log);
  for (double& p : pi) p *= scale;
}

StrengthVector zermelo_step(const WinMatrix& w, const StrengthVector& pi) {
  return step(Scheme::Zermelo, w, pi);
}

StrengthVector newman_step(const WinMatrix& w, const StrengthVector& pi) {
  return step(Scheme::Newman, w, pi);
}

StrengthVector newman_gauss_seidel_step(const WinMatrix& w,
                                        const StrengthVector& pi) {
  return step(Scheme::NewmanGaussSeidel, w, pi);
}

StrengthVector solve(const WinMatrix& w, const SolverConfig& config) {
  return solve_from(w, std::vector<double>(w.size(), 1.0), config);
}

StrengthVector solve_from(const WinMatrix& w, std::vector<double> start,
                          const SolverConfig& config) {
  config.validate();
  if (w.size() < 2) throw UsageError("solve needs at least two items");
  check_strengths(w, start);
  require_connected_items(w);

  const Comparisons comparisons(w);
  StrengthVector result;
  result.pi = std::move(start);
  normalize_geometric(result.pi);
  std::vector<double> next;
  for (int it = 1; it <= config.max_iterations; ++it) {
    sweep(config.scheme, comparisons, result.pi, next);
    const bool saturated = any_saturated(next);
    normalize_geometric(next);
    result.final_delta = max_relative_change(result.pi, next);
    result.pi.swap(next);
    result.iterations = it;
    result.saturated = saturated;
    // A saturated vector that stopped moving is a fixed point of the clamped
    // map; more sweeps cannot change it.
    if (result.final_delta < config.tolerance) {
      result.converged = !saturated;
      return result;
    }
  }
  result.converged = false;
  return result;
}

std::vector<std::size_t> rank_by_strength(std::span<const double> pi) {
  std::vector<std::size_t> order(pi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pi[a] > pi[b]; });
  return order;
}

}  // namespace portsel
