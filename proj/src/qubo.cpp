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

#include "uc/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uc/cost.hpp"

namespace uc {

QuboProblem::QuboProblem(std::size_t n_dec, std::size_t n_sl)
    : n_decision(n_dec),
      n_slack(n_sl),
      linear(n_dec + n_sl, 0.0),
      quadratic((n_dec + n_sl) * (n_dec + n_sl), 0.0) {}

void QuboProblem::add_term(std::size_t i, std::size_t j, double value) {
  const std::size_t n = size();
  if (i == j) {
    quadratic[i * n + i] += value;
  } else {
    quadratic[i * n + j] += 0.5 * value;
    quadratic[j * n + i] += 0.5 * value;
  }
}

void QuboProblem::add_squared(std::span<const std::size_t> vars, std::span<const double> coeffs,
                              double offset, double weight) {
  // Squares stay on the diagonal so the continuous relaxation remains convex.
  for (std::size_t a = 0; a < vars.size(); ++a) {
    add_term(vars[a], vars[a], weight * coeffs[a] * coeffs[a]);
    linear[vars[a]] += weight * 2.0 * offset * coeffs[a];
    for (std::size_t b = a + 1; b < vars.size(); ++b) {
      add_term(vars[a], vars[b], 2.0 * weight * coeffs[a] * coeffs[b]);
    }
  }
  constant += weight * offset * offset;
}

double evaluate_qubo(const QuboProblem& q, std::span<const std::uint8_t> bits) {
  const std::size_t n = q.size();
  if (bits.size() != n) {
    throw DimensionError("bitstring has " + std::to_string(bits.size()) + " bits, QUBO has " +
                         std::to_string(n));
  }
  double v = q.constant;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    v += q.linear[i] + q.quad(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bits[j]) v += 2.0 * q.quad(i, j);
    }
  }
  return v;
}

double evaluate_qubo_index(const QuboProblem& q, std::uint64_t index) {
  return evaluate_qubo(q, bits_from_index(index, q.size()));
}

namespace {

double block_surplus(const SlackBlock& b, std::span<const std::uint8_t> bits) {
  double s = -b.bound;
  for (std::size_t i = 0; i < b.coefficients.size(); ++i) {
    if (bits[i]) s += b.coefficients[i];
  }
  return s;
}

}  // namespace

bool satisfies_constraints(const QuboProblem& q, std::span<const std::uint8_t> bits) {
  if (bits.size() != q.size()) throw DimensionError("bitstring length does not match the QUBO");
  for (const auto& [bit, value] : q.pins) {
    if (bits[bit] != value) return false;
  }
  for (const SlackBlock& b : q.slack_layout) {
    if (block_surplus(b, bits) < -1e-9) return false;
  }
  return true;
}

double decision_value(const QuboProblem& q, std::span<const std::uint8_t> bits) {
  if (bits.size() != q.size()) throw DimensionError("bitstring length does not match the QUBO");
  std::vector<std::uint8_t> x(bits.begin(), bits.end());
  for (const SlackBlock& b : q.slack_layout) {
    double cap = 0.0;
    for (double w : b.weights) cap += w;
    double s = std::clamp(std::round(block_surplus(b, bits)), 0.0, cap);
    // Weights are 1, 2, 4, ..., so the greedy encoding is exact.
    for (std::size_t k = b.count; k-- > 0;) {
      const bool on = s >= b.weights[k];
      x[b.first_bit + k] = on ? 1 : 0;
      if (on) s -= b.weights[k];
    }
  }
  return evaluate_qubo(q, x);
}

double evaluate_ising(const IsingModel& m, std::span<const int> z) {
  if (z.size() != m.n) throw DimensionError("spin vector length does not match the Ising model");
  double v = m.offset;
  for (std::size_t i = 0; i < m.n; ++i) {
    v += m.fields[i] * z[i];
    for (std::size_t j = 0; j < m.n; ++j) v += m.coupling(i, j) * z[i] * z[j];
  }
  return v;
}

IsingModel qubo_to_ising(const QuboProblem& q) {
  // x = (1 - z) / 2 term by term; z_i^2 = 1 folds the diagonal into constants.
  const std::size_t n = q.size();
  IsingModel m;
  m.n = n;
  m.couplings.assign(n * n, 0.0);
  m.fields.assign(n, 0.0);
  m.offset = q.constant;
  for (std::size_t i = 0; i < n; ++i) {
    m.fields[i] -= 0.5 * q.linear[i];
    m.offset += 0.5 * q.linear[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double qij = q.quad(i, j);
      if (qij == 0.0) continue;
      m.fields[i] -= 0.25 * qij;
      m.fields[j] -= 0.25 * qij;
      if (i == j) {
        m.offset += 0.5 * qij;
      } else {
        m.offset += 0.25 * qij;
        m.couplings[i * n + j] += 0.25 * qij;
      }
    }
  }
  return m;
}

std::size_t slack_bits_for_range(long long range) {
  if (range < 0) throw std::invalid_argument("slack range must be nonnegative");
  std::size_t bits = 0;
  while (bits < 63 && ((1LL << bits) - 1) < range) ++bits;
  return bits;
}

TimeStepContext build_context(const Instance& inst, const Schedule& y, const Dispatch& p,
                              const HistoryState& h, std::size_t t) {
  check_shape(inst, y, p);
  if (t >= inst.horizon()) {
    throw DimensionError("time index " + std::to_string(t + 1) + " outside horizon " +
                         std::to_string(inst.horizon()));
  }
  const std::size_t n = inst.unit_count();
  TimeStepContext ctx;
  ctx.t = t;
  ctx.powers = p.column(t);
  ctx.prev_y.resize(n);
  ctx.t_off_prev.resize(n);
  ctx.t_on_prev.resize(n);
  ctx.forced.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UnitSpec& u = inst.units[i];
    ctx.prev_y[i] = committed_before(inst, y, i, t) ? 1 : 0;
    ctx.t_off_prev[i] = off_steps_before(inst, h, i, t);
    ctx.t_on_prev[i] = on_steps_before(inst, h, i, t);
    if (ctx.prev_y[i] && ctx.t_on_prev[i] < u.t_up_min) {
      ctx.forced[i] = ForcedState::forced_on;
    } else if (!ctx.prev_y[i] && ctx.t_off_prev[i] < u.t_down_min) {
      ctx.forced[i] = ForcedState::forced_off;
    } else {
      ctx.forced[i] = ForcedState::free;
    }
  }
  return ctx;
}

QuboProblem build_qubo(const Instance& inst, const TimeStepContext& ctx, const PenaltyWeights& w) {
  const std::size_t n = inst.unit_count();
  const std::size_t t = ctx.t;
  const double demand = inst.load[t];
  const double required = inst.load[t] + inst.reserve[t];

  double capacity = 0.0;
  for (const UnitSpec& u : inst.units) capacity += u.p_max;
  const long long range =
      std::max(0LL, static_cast<long long>(std::floor(capacity - required + 1e-9)));
  const std::size_t n_slack = slack_bits_for_range(range);

  QuboProblem q(n, n_slack);

  for (std::size_t i = 0; i < n; ++i) {
    const UnitSpec& u = inst.units[i];
    double cost = fuel_cost(u, ctx.powers[i]);
    if (!ctx.prev_y[i]) cost += startup_cost(u, ctx.t_off_prev[i]);
    q.linear[i] += cost;
  }

  std::vector<std::size_t> vars(n);
  std::vector<double> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) {
    vars[i] = i;
    coeffs[i] = ctx.powers[i];
  }
  q.add_squared(vars, coeffs, -demand, w.load);

  for (std::size_t i = 0; i < n; ++i) {
    switch (ctx.forced[i]) {
      case ForcedState::forced_on:  // (y - 1)^2
        q.add_term(i, i, w.up_down);
        q.linear[i] -= 2.0 * w.up_down;
        q.constant += w.up_down;
        q.pins.emplace_back(i, 1);
        break;
      case ForcedState::forced_off:  // y^2
        q.add_term(i, i, w.up_down);
        q.pins.emplace_back(i, 0);
        break;
      case ForcedState::free:
        break;
    }
  }

  // Reserve: sum p_max*y - (L + R) - s = 0 with s >= 0 the committed surplus.
  SlackBlock block{"reserve", n, n_slack, {}, {}, required};
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = inst.units[i].p_max;
  block.coefficients = coeffs;
  for (std::size_t k = 0; k < n_slack; ++k) {
    const double weight = std::ldexp(1.0, static_cast<int>(k));
    block.weights.push_back(weight);
    vars.push_back(n + k);
    coeffs.push_back(-weight);
  }
  q.add_squared(vars, coeffs, -required, w.reserve);
  q.slack_layout.push_back(std::move(block));
  return q;
}

std::vector<std::uint8_t> bits_from_index(std::uint64_t index, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t k = 0; k < n; ++k) bits[k] = (index >> k) & 1U;
  return bits;
}

std::uint64_t index_from_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) index |= std::uint64_t{1} << k;
  }
  return index;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t k = 0; k < bits.size(); ++k) s[k] = bits[k] ? '1' : '0';
  return s;
}

}  // namespace uc
