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

#include "uc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "uc/error.hpp"

namespace uc::optim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Geometry thresholds relative to the trust radius.
constexpr double kMaxVertexDistance = 2.1;
constexpr double kMinFaceDistance = 0.25;
constexpr std::size_t kRefactorEvery = 64;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Inverts the column matrix of simplex edges, returning rows w_j with
// w_j . v_k = delta_jk. Returns false when the simplex is numerically flat.
bool invert_edges(const std::vector<std::vector<double>>& edges,
                  std::vector<std::vector<double>>& rows) {
  const std::size_t m = edges.size();
  // a = V^T, so solving a X = I gives X = V^{-T} whose columns are the rows w_j.
  std::vector<std::vector<double>> a(m, std::vector<double>(2 * m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) a[j][k] = edges[j][k];
    a[j][m + j] = 1.0;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-300) return false;
    std::swap(a[c], a[piv]);
    const double inv = 1.0 / a[c][c];
    for (double& v : a[c]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < 2 * m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  // Row j of V^{-1} is column j of V^{-T}.
  rows.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) rows[j][k] = a[k][m + j];
  }
  return true;
}

class Solver {
 public:
  Solver(const Problem& p, std::span<const double> x0, std::uint64_t seed)
      : problem_(p), rng_(seed) {
    const std::size_t n = p.dimension;
    lower_.assign(n, -kInf);
    upper_.assign(n, kInf);
    if (!p.lower.empty()) lower_ = p.lower;
    if (!p.upper.empty()) upper_ = p.upper;
    full_.assign(x0.begin(), x0.end());
    for (std::size_t k = 0; k < n; ++k) {
      full_[k] = std::clamp(full_[k], lower_[k], upper_[k]);
      if (lower_[k] < upper_[k]) free_.push_back(k);
    }
  }

  Result run() {
    const std::size_t m = free_.size();
    base_.resize(m);
    for (std::size_t j = 0; j < m; ++j) base_[j] = full_[free_[j]];

    f0_ = evaluate(base_);
    if (!std::isfinite(f0_)) {
      throw OptimError("objective is not finite at the starting point", full_, f0_);
    }
    best_x_ = full_;
    best_f_ = f0_;
    if (m == 0) return finish(true);

    rho_ = problem_.initial_radius;
    for (std::size_t j = 0; j < m; ++j) {
      const double width = upper_[free_[j]] - lower_[free_[j]];
      if (std::isfinite(width)) rho_ = std::min(rho_, 0.5 * width);
    }
    rhoend_ = std::min(problem_.tolerance, rho_);
    delta_ = rho_;

    if (!build_simplex()) return finish(false);
    return iterate();
  }

 private:
  bool out_of_budget() const { return evaluations_ >= problem_.max_evaluations; }

  std::vector<double> lift(const std::vector<double>& reduced) const {
    std::vector<double> x = full_;
    for (std::size_t j = 0; j < free_.size(); ++j) x[free_[j]] = reduced[j];
    return x;
  }

  double evaluate(const std::vector<double>& reduced) {
    const std::vector<double> x = lift(reduced);
    ++evaluations_;
    const double f = problem_.objective(x);
    if (std::isfinite(f) && f < best_f_) {
      best_f_ = f;
      best_x_ = x;
    }
    return f;
  }

  // Clips base + d onto the box and returns the realized displacement.
  std::vector<double> clip_step(const std::vector<double>& d) const {
    std::vector<double> out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
      const std::size_t k = free_[j];
      out[j] = std::clamp(base_[j] + d[j], lower_[k], upper_[k]) - base_[j];
    }
    return out;
  }

  std::vector<double> at(const std::vector<double>& d) const {
    std::vector<double> x(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) x[j] = base_[j] + d[j];
    // Keep iterates exactly inside the box despite rounding.
    for (std::size_t j = 0; j < d.size(); ++j) {
      x[j] = std::clamp(x[j], lower_[free_[j]], upper_[free_[j]]);
    }
    return x;
  }

  bool build_simplex() {
    const std::size_t m = free_.size();
    edges_.assign(m, std::vector<double>(m, 0.0));
    values_.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t k = free_[j];
      double step = rho_;
      bool placed = false;
      for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
        if (out_of_budget()) return false;
        double s = (attempt % 2 == 0) ? step : -step;
        if (base_[j] + s > upper_[k] || base_[j] + s < lower_[k]) s = -s;
        std::vector<double> d(m, 0.0);
        d[j] = s;
        d = clip_step(d);
        if (d[j] == 0.0) {
          step *= 0.5;
          continue;
        }
        const double f = evaluate(at(d));
        if (std::isfinite(f)) {
          edges_[j] = d;
          values_[j] = f;
          placed = true;
        } else if (attempt % 2 == 1) {
          step *= 0.5;
        }
      }
      if (!placed) {
        throw OptimError("could not build an initial simplex with finite objective values",
                         best_x_, best_f_);
      }
    }
    if (!invert_edges(edges_, rows_)) {
      throw OptimError("initial simplex is degenerate", best_x_, best_f_);
    }
    return true;
  }

  // Moves the base to vertex j, keeping the inverse consistent.
  void pivot_to(std::size_t j) {
    const std::size_t m = free_.size();
    const std::vector<double> vj = edges_[j];
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      for (std::size_t c = 0; c < m; ++c) edges_[k][c] -= vj[c];
    }
    for (std::size_t c = 0; c < m; ++c) {
      edges_[j][c] = -vj[c];
      base_[c] += vj[c];
    }
    std::vector<double> sum(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t c = 0; c < m; ++c) sum[c] += rows_[k][c];
    }
    for (std::size_t c = 0; c < m; ++c) rows_[j][c] = -sum[c];
    std::swap(values_[j], f0_);
    for (std::size_t c = 0; c < m; ++c) base_[c] = std::clamp(base_[c], lower_[free_[c]], upper_[free_[c]]);
  }

  void select_best_pivot() {
    std::size_t best = values_.size();
    double fbest = f0_;
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (values_[j] < fbest) {
        fbest = values_[j];
        best = j;
      }
    }
    if (best < values_.size()) pivot_to(best);
  }

  // Replaces edge j by d. Returns false when d is nearly parallel to the
  // opposite face.
  bool replace_vertex(std::size_t j, const std::vector<double>& d, double f) {
    const std::size_t m = free_.size();
    const double denom = dot(rows_[j], d);
    if (std::abs(denom) < 1e-12) return false;
    std::vector<double> wj = rows_[j];
    for (double& v : wj) v /= denom;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      const double s = dot(rows_[k], d);
      for (std::size_t c = 0; c < m; ++c) rows_[k][c] -= s * wj[c];
    }
    rows_[j] = wj;
    edges_[j] = d;
    values_[j] = f;
    if (++replacements_ % kRefactorEvery == 0) {
      std::vector<std::vector<double>> fresh;
      if (invert_edges(edges_, fresh)) rows_ = std::move(fresh);
    }
    return true;
  }

  std::vector<double> model_gradient() const {
    const std::size_t m = free_.size();
    std::vector<double> g(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double df = values_[j] - f0_;
      for (std::size_t c = 0; c < m; ++c) g[c] += df * rows_[j][c];
    }
    return g;
  }

  bool geometry_adequate() const {
    for (std::size_t j = 0; j < edges_.size(); ++j) {
      if (norm(edges_[j]) > kMaxVertexDistance * delta_) return false;
      if (1.0 / norm(rows_[j]) < kMinFaceDistance * delta_) return false;
    }
    return true;
  }

  // Re-positions the worst vertex. Returns false if no usable point exists.
  bool improve_geometry(const std::vector<double>& g) {
    const std::size_t m = free_.size();
    std::size_t j = 0;
    double worst = -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double dist = norm(edges_[k]);
      if (dist > kMaxVertexDistance * delta_ && dist > worst) {
        worst = dist;
        j = k;
      }
    }
    if (worst < 0.0) {
      double thinnest = kInf;
      for (std::size_t k = 0; k < m; ++k) {
        const double face = 1.0 / norm(rows_[k]);
        if (face < thinnest) {
          thinnest = face;
          j = k;
        }
      }
    }
    const double wn = norm(rows_[j]);
    const double sign = dot(g, rows_[j]) > 0.0 ? -1.0 : 1.0;
    std::vector<double> best_d;
    double best_score = 0.0;
    for (double s : {sign, -sign}) {
      std::vector<double> d(m);
      for (std::size_t c = 0; c < m; ++c) d[c] = s * 0.5 * delta_ * rows_[j][c] / wn;
      d = clip_step(d);
      const double score = std::abs(dot(rows_[j], d));
      if (score > 2.0 * best_score) {
        best_score = score;
        best_d = d;
      }
    }
    if (best_d.empty() || best_score < 1e-8) return false;
    const double f = evaluate(at(best_d));
    if (!std::isfinite(f)) return false;
    return replace_vertex(j, best_d, f);
  }

  std::size_t drop_index(const std::vector<double>& d, bool improved) const {
    const std::size_t m = free_.size();
    std::size_t j = m;
    double top = improved ? -1.0 : 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      double dist2 = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        const double e = improved ? edges_[k][c] - d[c] : edges_[k][c];
        dist2 += e * e;
      }
      const double score =
          std::abs(dot(rows_[k], d)) * std::max(1.0, dist2 / (delta_ * delta_));
      if (score > top) {
        top = score;
        j = k;
      }
    }
    return j;
  }

  // Returns true when rho was reduced, false when the final resolution is reached.
  bool reduce_rho() {
    if (rho_ <= rhoend_) return false;
    const double old_delta = delta_;
    rho_ *= 0.5;
    if (rho_ <= 1.5 * rhoend_) rho_ = rhoend_;
    delta_ = std::max(0.5 * old_delta, rho_);
    return true;
  }

  std::vector<double> random_direction(std::size_t m) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> d(m);
    double n = 0.0;
    while (n == 0.0) {
      for (double& v : d) v = gauss(rng_);
      n = norm(d);
    }
    for (double& v : d) v *= delta_ / n;
    return d;
  }

  Result iterate() {
    const std::size_t m = free_.size();
    while (!out_of_budget()) {
      select_best_pivot();
      const std::vector<double> g = model_gradient();

      // Projected gradient: drop components pushing into an active bound.
      std::vector<double> gp = g;
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t k = free_[c];
        if ((base_[c] <= lower_[k] && gp[c] > 0.0) || (base_[c] >= upper_[k] && gp[c] < 0.0)) {
          gp[c] = 0.0;
        }
      }
      const double gnorm = norm(gp);
      const bool flat = norm(g) == 0.0;

      std::vector<double> d;
      if (flat) {
        d = clip_step(random_direction(m));
      } else if (gnorm > 0.0) {
        d.resize(m);
        for (std::size_t c = 0; c < m; ++c) d[c] = -delta_ * gp[c] / gnorm;
        d = clip_step(d);
      }
      const double dnorm = d.empty() ? 0.0 : norm(d);
      const double predicted = d.empty() ? 0.0 : -dot(g, d);

      bool bad_step = false;
      if (dnorm < 0.5 * rho_ || (!flat && predicted <= 0.0)) {
        delta_ = std::max(0.5 * delta_, rho_);
        bad_step = true;
      } else {
        const double f = evaluate(at(d));
        double ratio;
        if (!std::isfinite(f)) {
          ratio = -kInf;
        } else if (flat) {
          ratio = f < f0_ ? 1.0 : -1.0;
        } else {
          ratio = (f0_ - f) / predicted;
        }
        if (ratio <= 0.1) {
          delta_ = 0.5 * dnorm;
        } else if (ratio <= 0.7) {
          delta_ = std::max(0.5 * delta_, dnorm);
        } else {
          delta_ = std::max(0.5 * delta_, 2.0 * dnorm);
        }
        if (delta_ <= 1.5 * rho_) delta_ = rho_;

        if (std::isfinite(f)) {
          const bool improved = f < f0_;
          const std::size_t j = drop_index(d, improved);
          if (j < m) replace_vertex(j, d, f);
        }
        bad_step = ratio <= 0.1;
      }

      if (!bad_step) continue;
      if (out_of_budget()) break;
      if (!geometry_adequate()) {
        if (improve_geometry(g)) continue;
      }
      if (std::max(delta_, dnorm) <= rho_ * (1.0 + 1e-9) || dnorm < 0.5 * rho_) {
        if (!reduce_rho()) return finish(true);
      }
    }
    return finish(false);
  }

  Result finish(bool converged) {
    Result r;
    r.x_best = best_x_;
    r.f_best = best_f_;
    r.evaluations = evaluations_;
    r.converged = converged;
    return r;
  }

  const Problem& problem_;
  std::mt19937_64 rng_;
  std::vector<double> lower_, upper_, full_;
  std::vector<std::size_t> free_;

  std::vector<double> base_;
  double f0_ = 0.0;
  std::vector<std::vector<double>> edges_;  // v_j = vertex_j - base
  std::vector<std::vector<double>> rows_;   // w_j with w_j . v_k = delta_jk
  std::vector<double> values_;

  double rho_ = 0.0, rhoend_ = 0.0, delta_ = 0.0;
  std::size_t evaluations_ = 0;
  std::size_t replacements_ = 0;
  std::vector<double> best_x_;
  double best_f_ = kInf;
};

}  // namespace

Result minimize(const Problem& problem, std::span<const double> x0, std::uint64_t seed) {
  if (x0.size() != problem.dimension) {
    throw DimensionError("starting point has " + std::to_string(x0.size()) +
                         " entries, problem dimension is " + std::to_string(problem.dimension));
  }
  if ((!problem.lower.empty() && problem.lower.size() != problem.dimension) ||
      (!problem.upper.empty() && problem.upper.size() != problem.dimension)) {
    throw DimensionError("bound vectors must be empty or match the problem dimension");
  }
  for (std::size_t k = 0; k < problem.dimension; ++k) {
    const double lo = problem.lower.empty() ? -kInf : problem.lower[k];
    const double hi = problem.upper.empty() ? kInf : problem.upper[k];
    if (!(lo <= hi)) throw ValidationError("lower bound exceeds upper bound at coordinate " + std::to_string(k));
  }
  if (problem.max_evaluations < 1) throw ValidationError("evaluation budget must be at least 1");
  if (!problem.objective) throw ValidationError("objective is not set");
  if (!(problem.tolerance > 0.0) || !(problem.initial_radius > 0.0)) {
    throw ValidationError("tolerance and initial radius must be positive");
  }
  Solver solver(problem, x0, seed);
  return solver.run();
}

}  // namespace uc::optim
