// Copyright 2026 The uc-hybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-time-step binary subproblem.
//
// Variables are the N commitment bits of one step followed by binary slack
// bits. Powers, histories and start-up classes are constants at build time,
// so the minimum up/down indicators and the hot/cold indicator never become
// qubits.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uc/model.hpp"

namespace uc {

/// Contiguous run of slack bits serving the inequality
/// sum_i coefficients[i] * x_i >= bound over the decision bits.
struct SlackBlock {
  std::string constraint;
  std::size_t first_bit = 0;
  std::size_t count = 0;
  std::vector<double> weights;  // 1, 2, 4, ...
  std::vector<double> coefficients;
  double bound = 0.0;
};

/// Minimize x^T Q x + b^T x + constant over x in {0,1}^n, Q symmetric.
class QuboProblem {
 public:
  QuboProblem() = default;
  QuboProblem(std::size_t n_decision, std::size_t n_slack);

  std::size_t size() const noexcept { return n_decision + n_slack; }

  double quad(std::size_t i, std::size_t j) const noexcept { return quadratic[i * size() + j]; }

  /// Adds `value * x_i * x_j` to the objective, keeping Q symmetric.
  void add_term(std::size_t i, std::size_t j, double value);

  /// Adds `weight * (sum_k coeff_k * x_{var_k} + offset)^2`.
  void add_squared(std::span<const std::size_t> vars, std::span<const double> coeffs,
                   double offset, double weight);

  std::size_t n_decision = 0;
  std::size_t n_slack = 0;
  std::vector<double> linear;
  std::vector<double> quadratic;  // row-major, size() x size()
  double constant = 0.0;
  std::vector<SlackBlock> slack_layout;
  /// Decision bits held at a value by the minimum up/down rules.
  std::vector<std::pair<std::size_t, std::uint8_t>> pins;
};

/// z^T J z + c^T z + offset over spins z in {-1,+1}^n, with z = 1 - 2x.
struct IsingModel {
  std::size_t n = 0;
  std::vector<double> couplings;  // row-major n x n, symmetric, zero diagonal
  std::vector<double> fields;
  double offset = 0.0;

  double coupling(std::size_t i, std::size_t j) const noexcept { return couplings[i * n + j]; }
};

enum class ForcedState { free, forced_on, forced_off };

struct TimeStepContext {
  std::size_t t = 0;
  std::vector<double> powers;
  std::vector<std::uint8_t> prev_y;
  std::vector<int> t_off_prev;
  std::vector<int> t_on_prev;
  std::vector<ForcedState> forced;
};

struct PenaltyWeights {
  double load = 1.0;
  double reserve = 1.0;
  double up_down = 100.0;
};

double evaluate_qubo(const QuboProblem& q, std::span<const std::uint8_t> bits);
/// Same as evaluate_qubo with bit k taken from bit k of `index`.
double evaluate_qubo_index(const QuboProblem& q, std::uint64_t index);

/// True when the decision bits satisfy every pin and slack-backed inequality.
bool satisfies_constraints(const QuboProblem& q, std::span<const std::uint8_t> bits);

/// evaluate_qubo with every slack block set to its best value for the given
/// decision bits; the sampled slack bits are ignored.
double decision_value(const QuboProblem& q, std::span<const std::uint8_t> bits);

double evaluate_ising(const IsingModel& m, std::span<const int> spins);

IsingModel qubo_to_ising(const QuboProblem& q);

/// ceil(log2(range + 1)) bits of weights 1, 2, 4, ... cover [0, range].
std::size_t slack_bits_for_range(long long range);

/// Everything the step-t subproblem needs from the solution prefix before t
/// and the dispatch column at t. `history` is only read at columns < t.
TimeStepContext build_context(const Instance& instance, const Schedule& schedule,
                              const Dispatch& dispatch, const HistoryState& history,
                              std::size_t t);

QuboProblem build_qubo(const Instance& instance, const TimeStepContext& ctx,
                       const PenaltyWeights& weights = {});

std::vector<std::uint8_t> bits_from_index(std::uint64_t index, std::size_t n);
std::uint64_t index_from_bits(std::span<const std::uint8_t> bits);
/// Bit k of the result is character k; the leftmost character is variable 0.
std::string bits_to_string(std::span<const std::uint8_t> bits);

}  // namespace uc
