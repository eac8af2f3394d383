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

// Dense statevector QAOA.
//
// Basis index bit k is qubit k, which carries QUBO variable k. Spins follow
// z = 1 - 2x, so |0> has z = +1.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uc/qubo.hpp"

namespace uc {

using Amplitude = std::complex<double>;

struct StateVector {
  std::size_t n = 0;
  std::vector<Amplitude> amplitudes;

  double norm_squared() const;
  std::vector<double> probabilities() const;
};

enum class QaoaMode { standard, warm_start };

std::string to_string(QaoaMode mode);
/// Accepts "standard", "warm-start" and "warm_start".
QaoaMode parse_qaoa_mode(const std::string& text);

/// Called once per objective evaluation with the 1-based evaluation index,
/// gamma, beta and the exact expectation.
using QaoaTraceFn = std::function<void(std::size_t, std::span<const double>,
                                       std::span<const double>, double)>;

/// Qubit ceiling: UC_HYBRID_MAX_QUBITS when set to a positive integer, else 24.
std::size_t default_max_qubits();

struct QaoaConfig {
  std::size_t layers = 1;
  QaoaMode mode = QaoaMode::standard;
  std::size_t shots = 4096;
  std::size_t maxiter = 1000;
  double tolerance = 1e-4;  // final trust radius of the parameter search
  std::uint64_t seed = 0;
  double epsilon = 0.01;         // warm-start clamp
  std::size_t restarts = 1;      // random parameter starts
  std::size_t relax_restarts = 4;
  std::size_t max_qubits = default_max_qubits();
  /// When set, skips the search and uses (gamma_1..gamma_p, beta_1..beta_p).
  std::optional<std::vector<double>> fixed_parameters;
  QaoaTraceFn trace;
};

struct QaoaResult {
  std::vector<std::uint8_t> best_bits;
  double best_value = 0.0;
  std::map<std::string, std::size_t> samples;  // bits_to_string -> count
  std::vector<double> gamma;
  std::vector<double> beta;
  double expectation = 0.0;  // at the returned parameters
  std::size_t evaluations = 0;
};

struct RelaxedSolution {
  std::vector<double> c_star;
  double value = 0.0;
};

StateVector init_standard(std::size_t n, std::size_t max_qubits = default_max_qubits());

/// Continuous relaxation of the QUBO over [0,1]^n by accelerated projected
/// gradient with `restarts` random starts plus the centre point.
RelaxedSolution solve_relaxed(const QuboProblem& q, std::size_t restarts, std::uint64_t seed);

/// Value of the QUBO polynomial at a real point.
double relaxed_value(const QuboProblem& q, std::span<const double> x);

/// Product state with qubit i at cos(theta_i/2)|0> + sin(theta_i/2)|1>,
/// theta_i = 2 asin(sqrt(c_i)) after clamping c_i into [eps, 1 - eps].
std::pair<StateVector, std::vector<double>> init_warm_start(
    std::span<const double> c_star, double epsilon, std::size_t max_qubits = default_max_qubits());

/// E(x) of every basis state, indexed like the amplitudes.
std::vector<double> ising_energies(const IsingModel& ising);

void apply_phase_separator(StateVector& state, const IsingModel& ising, double gamma);
void apply_phase_separator(StateVector& state, std::span<const double> energies, double gamma);

/// exp(-i beta X) on every qubit.
void apply_standard_mixer(StateVector& state, double beta);

/// RY(theta_i) RZ(-2 beta) RY(-theta_i) on every qubit i.
void apply_warm_start_mixer(StateVector& state, std::span<const double> theta, double beta);

double expectation(const StateVector& state, const IsingModel& ising);
double expectation(const StateVector& state, std::span<const double> energies);

QaoaResult run_qaoa(const QuboProblem& q, const QaoaConfig& cfg);

}  // namespace uc
