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

#include "uc/qaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <tuple>

#include "uc/error.hpp"
#include "uc/optim.hpp"

namespace uc {
namespace {

void check_qubits(std::size_t n, std::size_t max_qubits) {
  if (n > max_qubits) {
    throw QubitLimitError(std::to_string(n) + " qubits requested, limit is " +
                          std::to_string(max_qubits) + " (set UC_HYBRID_MAX_QUBITS to raise it)");
  }
  if (n >= 63) throw QubitLimitError("statevector index would overflow");
}

void check_state(const StateVector& s, std::size_t n) {
  if (s.n != n || s.amplitudes.size() != (std::size_t{1} << n)) {
    throw DimensionError("state has " + std::to_string(s.n) + " qubits, operator expects " +
                         std::to_string(n));
  }
}

struct Gate {
  Amplitude m00, m01, m10, m11;
};

// Per-qubit 2x2 gates.
struct GateOp {
  std::span<const Gate> gates;
  void operator()(Amplitude* a, std::size_t k, std::size_t stride, std::size_t q) const {
    const Gate& g = gates[q];
    const Amplitude u = a[k];
    const Amplitude v = a[k + stride];
    a[k] = g.m00 * u + g.m01 * v;
    a[k + stride] = g.m10 * u + g.m11 * v;
  }
};

// Unnormalized Hadamard on every qubit.
struct HadamardOp {
  void operator()(Amplitude* a, std::size_t k, std::size_t stride, std::size_t) const {
    const Amplitude u = a[k];
    const Amplitude v = a[k + stride];
    a[k] = u + v;
    a[k + stride] = u - v;
  }
};

constexpr std::size_t kLowQubits = 11;   // 2^11 amplitudes, 32 KiB
constexpr std::size_t kGroupQubits = 7;  // high qubits handled per sweep
constexpr std::size_t kLane = 64;        // contiguous amplitudes moved together

// Applies a single-qubit operation to each of the n qubits. Low qubits are
// finished chunk by chunk and high qubits in groups, so each group costs one
// pass over memory.
template <typename Op>
void apply_each_qubit(std::vector<Amplitude>& state, std::size_t n, const Op& op) {
  Amplitude* a = state.data();
  const std::size_t low = std::min(n, kLowQubits);
  const std::size_t chunk = std::size_t{1} << low;
  for (std::size_t base = 0; base < state.size(); base += chunk) {
    for (std::size_t q = 0; q < low; ++q) {
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t b = base; b < base + chunk; b += 2 * stride) {
        for (std::size_t k = b; k < b + stride; ++k) op(a, k, stride, q);
      }
    }
  }
  for (std::size_t h = low; h < n; h += kGroupQubits) {
    const std::size_t g = std::min(kGroupQubits, n - h);
    const std::size_t combos = std::size_t{1} << g;
    const std::size_t span_size = std::size_t{1} << (h + g);
    for (std::size_t outer = 0; outer < state.size(); outer += span_size) {
      for (std::size_t inner = 0; inner < (std::size_t{1} << h); inner += kLane) {
        const std::size_t base = outer + inner;
        for (std::size_t j = 0; j < g; ++j) {
          const std::size_t stride = std::size_t{1} << (h + j);
          for (std::size_t c = 0; c < combos; ++c) {
            if ((c >> j) & 1U) continue;
            const std::size_t k0 = base + (c << h);
            for (std::size_t l = 0; l < kLane; ++l) op(a, k0 + l, stride, h + j);
          }
        }
      }
    }
  }
}

double energy_exact(const IsingModel& m, const std::vector<int>& z) {
  double e = m.offset;
  for (std::size_t i = 0; i < m.n; ++i) {
    e += m.fields[i] * z[i];
    for (std::size_t j = 0; j < m.n; ++j) e += m.coupling(i, j) * z[i] * z[j];
  }
  return e;
}

// Derivative of the energy with respect to z_k (J symmetric, zero diagonal).
void local_fields(const IsingModel& m, const std::vector<int>& z, std::vector<double>& h) {
  for (std::size_t k = 0; k < m.n; ++k) {
    double v = m.fields[k];
    for (std::size_t j = 0; j < m.n; ++j) {
      if (j != k) v += 2.0 * m.coupling(k, j) * z[j];
    }
    h[k] = v;
  }
}

std::vector<double> relaxed_gradient(const QuboProblem& q, const std::vector<double>& x) {
  const std::size_t n = q.size();
  std::vector<double> g(q.linear);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += q.quad(i, j) * x[j];
    g[i] += 2.0 * s;
  }
  return g;
}

std::vector<double> projected_descent(const QuboProblem& q, std::vector<double> x, double lip) {
  const std::size_t n = q.size();
  std::vector<double> y = x, prev = x;
  double tk = 1.0;
  for (int iter = 0; iter < 50000; ++iter) {
    const std::vector<double> g = relaxed_gradient(q, y);
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::clamp(y[i] - g[i] / lip, 0.0, 1.0);
      moved = std::max(moved, std::abs(x[i] - prev[i]));
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    // Momentum restart keeps the iteration monotone on the convex part.
    const bool restart = relaxed_value(q, x) > relaxed_value(q, prev);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = restart ? x[i] : x[i] + ((tk - 1.0) / tn) * (x[i] - prev[i]);
      y[i] = std::clamp(y[i], 0.0, 1.0);
    }
    tk = restart ? 1.0 : tn;
    prev = x;
    if (moved < 1e-12) break;
  }
  return x;
}

}  // namespace

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const Amplitude& a : amplitudes) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes.size());
  for (std::size_t k = 0; k < amplitudes.size(); ++k) p[k] = std::norm(amplitudes[k]);
  return p;
}

std::string to_string(QaoaMode mode) {
  return mode == QaoaMode::standard ? "standard" : "warm-start";
}

QaoaMode parse_qaoa_mode(const std::string& text) {
  if (text == "standard") return QaoaMode::standard;
  if (text == "warm-start" || text == "warm_start") return QaoaMode::warm_start;
  throw ValidationError("unknown QAOA mode '" + text + "'");
}

std::size_t default_max_qubits() {
  if (const char* env = std::getenv("UC_HYBRID_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 24;
}

StateVector init_standard(std::size_t n, std::size_t max_qubits) {
  if (n < 1) throw ValidationError("a register needs at least one qubit");
  check_qubits(n, max_qubits);
  StateVector s;
  s.n = n;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  s.amplitudes.assign(std::size_t{1} << n, Amplitude(amp, 0.0));
  return s;
}

double relaxed_value(const QuboProblem& q, std::span<const double> x) {
  const std::size_t n = q.size();
  double v = q.constant;
  for (std::size_t i = 0; i < n; ++i) {
    v += q.linear[i] * x[i];
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += q.quad(i, j) * x[j];
    v += x[i] * s;
  }
  return v;
}

RelaxedSolution solve_relaxed(const QuboProblem& q, std::size_t restarts, std::uint64_t seed) {
  const std::size_t n = q.size();
  RelaxedSolution best;
  best.value = std::numeric_limits<double>::infinity();
  if (n == 0) {
    best.value = q.constant;
    return best;
  }
  double lip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(q.quad(i, j));
    lip = std::max(lip, 2.0 * row);
  }
  lip = std::max(lip, 1e-12);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 0.5);
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<double> x(n);
    for (double& v : x) v = unit(rng);
    starts.push_back(std::move(x));
  }

  for (const std::vector<double>& x0 : starts) {
    std::vector<double> x = projected_descent(q, x0, lip);

    optim::Problem polish;
    polish.dimension = n;
    polish.objective = [&q](std::span<const double> v) { return relaxed_value(q, v); };
    polish.lower.assign(n, 0.0);
    polish.upper.assign(n, 1.0);
    polish.max_evaluations = 100 * (n + 1);
    polish.tolerance = 1e-9;
    polish.initial_radius = 0.05;
    const optim::Result r = optim::minimize(polish, x, seed);
    if (r.f_best < relaxed_value(q, x)) x = r.x_best;

    const double v = relaxed_value(q, x);
    if (v < best.value) {
      best.value = v;
      best.c_star = x;
    }
  }
  return best;
}

std::pair<StateVector, std::vector<double>> init_warm_start(std::span<const double> c_star,
                                                            double epsilon,
                                                            std::size_t max_qubits) {
  const std::size_t n = c_star.size();
  if (n < 1) throw ValidationError("a register needs at least one qubit");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw ValidationError("warm-start clamp must lie in [0, 0.5)");
  }
  check_qubits(n, max_qubits);
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c_star[i] >= 0.0 && c_star[i] <= 1.0)) {
      throw ValidationError("relaxed value outside [0, 1] at variable " + std::to_string(i));
    }
    const double c = std::clamp(c_star[i], epsilon, 1.0 - epsilon);
    theta[i] = 2.0 * std::asin(std::sqrt(c));
  }
  StateVector s;
  s.n = n;
  s.amplitudes.assign(std::size_t{1} << n, Amplitude(1.0, 0.0));
  // Build the product state one qubit at a time.
  std::size_t filled = 1;
  s.amplitudes[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c0 = std::cos(0.5 * theta[i]);
    const double c1 = std::sin(0.5 * theta[i]);
    for (std::size_t k = 0; k < filled; ++k) {
      s.amplitudes[k + filled] = s.amplitudes[k] * c1;
      s.amplitudes[k] *= c0;
    }
    filled <<= 1;
  }
  return {std::move(s), std::move(theta)};
}

std::vector<double> ising_energies(const IsingModel& m) {
  const std::size_t n = m.n;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> e(dim);
  std::vector<int> z(n, 1);
  std::vector<double> h(n);
  double energy = energy_exact(m, z);
  local_fields(m, z, h);
  e[0] = energy;
  // Walk a Gray code so each step flips one spin.
  for (std::size_t k = 1; k < dim; ++k) {
    const std::size_t flip = static_cast<std::size_t>(std::countr_zero(k));
    energy -= 2.0 * z[flip] * h[flip];
    const int dz = -2 * z[flip];
    z[flip] = -z[flip];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != flip) h[j] += 2.0 * m.coupling(j, flip) * dz;
    }
    if ((k & 4095) == 0) {
      energy = energy_exact(m, z);
      local_fields(m, z, h);
    }
    e[k ^ (k >> 1)] = energy;
  }
  return e;
}

void apply_phase_separator(StateVector& state, std::span<const double> energies, double gamma) {
  if (energies.size() != state.amplitudes.size()) {
    throw DimensionError("energy table does not match the state dimension");
  }
  if (gamma == 0.0) return;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    state.amplitudes[k] *= std::polar(1.0, -gamma * energies[k]);
  }
}

void apply_phase_separator(StateVector& state, const IsingModel& ising, double gamma) {
  check_state(state, ising.n);
  const std::vector<double> e = ising_energies(ising);
  apply_phase_separator(state, e, gamma);
}

void apply_standard_mixer(StateVector& state, double beta) {
  check_state(state, state.n);
  if (beta == 0.0) return;
  // exp(-i beta X)^{(x)n} = H^n exp(-i beta sum Z) H^n; the diagonal depends
  // only on the Hamming weight.
  const std::size_t n = state.n;
  const double scale = std::ldexp(1.0, -static_cast<int>(n));
  std::vector<Amplitude> phase(n + 1);
  for (std::size_t w = 0; w <= n; ++w) {
    const double sum_z = static_cast<double>(n) - 2.0 * static_cast<double>(w);
    phase[w] = std::polar(scale, -beta * sum_z);
  }
  apply_each_qubit(state.amplitudes, n, HadamardOp{});
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    state.amplitudes[k] *= phase[static_cast<std::size_t>(std::popcount(k))];
  }
  apply_each_qubit(state.amplitudes, n, HadamardOp{});
}

void apply_warm_start_mixer(StateVector& state, std::span<const double> theta, double beta) {
  check_state(state, state.n);
  if (theta.size() != state.n) throw DimensionError("need one warm-start angle per qubit");
  if (beta == 0.0) return;
  const Amplitude u = std::polar(1.0, beta);
  const Amplitude ub = std::conj(u);
  std::vector<Gate> gates(state.n);
  for (std::size_t i = 0; i < state.n; ++i) {
    const double c = std::cos(0.5 * theta[i]);
    const double s = std::sin(0.5 * theta[i]);
    const Amplitude off = c * s * (u - ub);
    gates[i] = {c * c * u + s * s * ub, off, off, s * s * u + c * c * ub};
  }
  apply_each_qubit(state.amplitudes, state.n, GateOp{gates});
}

double expectation(const StateVector& state, std::span<const double> energies) {
  if (energies.size() != state.amplitudes.size()) {
    throw DimensionError("energy table does not match the state dimension");
  }
  double v = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) v += std::norm(state.amplitudes[k]) * energies[k];
  return v;
}

double expectation(const StateVector& state, const IsingModel& ising) {
  check_state(state, ising.n);
  return expectation(state, ising_energies(ising));
}

QaoaResult run_qaoa(const QuboProblem& q, const QaoaConfig& cfg) {
  const std::size_t n = q.size();
  if (cfg.layers < 1) throw ValidationError("QAOA needs at least one layer");
  if (n < 1) throw ValidationError("QUBO has no variables");
  check_qubits(n, cfg.max_qubits);

  const IsingModel ising = qubo_to_ising(q);
  const std::vector<double> energies = ising_energies(ising);

  StateVector initial;
  std::vector<double> theta;
  if (cfg.mode == QaoaMode::warm_start) {
    const RelaxedSolution relaxed =
        solve_relaxed(q, cfg.relax_restarts, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::tie(initial, theta) = init_warm_start(relaxed.c_star, cfg.epsilon, cfg.max_qubits);
  } else {
    initial = init_standard(n, cfg.max_qubits);
  }

  const std::size_t p = cfg.layers;
  StateVector work = initial;
  auto prepare = [&](std::span<const double> params) {
    work.amplitudes = initial.amplitudes;
    for (std::size_t l = 0; l < p; ++l) {
      apply_phase_separator(work, energies, params[l]);
      if (cfg.mode == QaoaMode::warm_start) {
        apply_warm_start_mixer(work, theta, params[p + l]);
      } else {
        apply_standard_mixer(work, params[p + l]);
      }
    }
  };

  std::size_t evaluations = 0;
  auto objective = [&](std::span<const double> params) {
    prepare(params);
    const double e = expectation(work, energies);
    ++evaluations;
    if (cfg.trace) cfg.trace(evaluations, params.subspan(0, p), params.subspan(p, p), e);
    return e;
  };

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> best_params;
  double best_expectation = std::numeric_limits<double>::infinity();
  if (cfg.fixed_parameters) {
    if (cfg.fixed_parameters->size() != 2 * p) {
      throw DimensionError("fixed parameters must hold gamma and beta for every layer");
    }
    best_params = *cfg.fixed_parameters;
    best_expectation = objective(best_params);
  } else {
    std::uniform_real_distribution<double> start(0.0, 0.5 * std::numbers::pi);
    const std::size_t starts = std::max<std::size_t>(1, cfg.restarts);
    for (std::size_t r = 0; r < starts; ++r) {
      std::vector<double> x0(2 * p);
      for (double& v : x0) v = start(rng);
      optim::Problem prob;
      prob.dimension = 2 * p;
      prob.objective = objective;
      prob.max_evaluations = cfg.maxiter;
      prob.tolerance = cfg.tolerance;
      prob.initial_radius = 1.0;
      const optim::Result res = optim::minimize(prob, x0, rng());
      if (res.f_best < best_expectation) {
        best_expectation = res.f_best;
        best_params = res.x_best;
      }
    }
  }

  prepare(best_params);
  QaoaResult out;
  out.gamma.assign(best_params.begin(), best_params.begin() + static_cast<std::ptrdiff_t>(p));
  out.beta.assign(best_params.begin() + static_cast<std::ptrdiff_t>(p), best_params.end());
  out.expectation = best_expectation;
  out.evaluations = evaluations;

  // Inverse-CDF sampling from the final state.
  std::vector<double> cdf(work.amplitudes.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += std::norm(work.amplitudes[k]);
    cdf[k] = acc;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<std::uint64_t, std::size_t> counts;
  for (std::size_t s = 0; s < cfg.shots; ++s) {
    const double r = unit(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  if (counts.empty()) {
    // No shots requested: read out the most probable basis state.
    std::size_t arg = 0;
    for (std::size_t k = 1; k < cdf.size(); ++k) {
      if (std::norm(work.amplitudes[k]) > std::norm(work.amplitudes[arg])) arg = k;
    }
    counts[arg] = 0;
  }

  // Samples whose decision bits satisfy the pins and slack-backed
  // inequalities rank first, then by objective with the slack at its best setting, then by the
  // sampled value itself.
  using Rank = std::tuple<bool, double, double>;
  std::optional<Rank> best;
  for (const auto& [index, count] : counts) {
    const std::vector<std::uint8_t> bits = bits_from_index(index, n);
    out.samples[bits_to_string(bits)] = count;
    const double v = evaluate_qubo(q, bits);
    const Rank rank{!satisfies_constraints(q, bits), decision_value(q, bits), v};
    if (!best || rank < *best) {
      best = rank;
      out.best_value = v;
      out.best_bits = bits;
    }
  }
  return out;
}

}  // namespace uc
