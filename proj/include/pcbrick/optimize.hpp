// Copyright 2026 The pcbrick Authors
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

// Derivative-free local minimizers: a linear-model trust-region simplex
// method in the style of COBYLA (without constraints) and Nelder-Mead.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pcbrick {

enum class OptimizerMethod { kCobyla, kNelderMead };

constexpr std::string_view to_string(OptimizerMethod m) {
  return m == OptimizerMethod::kCobyla ? "cobyla" : "nelder-mead";
}

inline OptimizerMethod parse_optimizer_method(std::string_view s) {
  if (s == "cobyla") return OptimizerMethod::kCobyla;
  if (s == "nelder-mead" || s == "nelder_mead") return OptimizerMethod::kNelderMead;
  throw std::invalid_argument("unknown optimizer '" + std::string(s) +
                              "' (expected cobyla or nelder-mead)");
}

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::kCobyla;
  std::size_t max_evals = 1000;
  /// Initial trust-region radius (COBYLA) or simplex edge (Nelder-Mead).
  double initial_step = 0.5;
  /// Final trust-region radius (COBYLA) or simplex size (Nelder-Mead).
  double convergence_tol = 1e-6;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_evals < 1) throw std::invalid_argument("OptimizerConfig: max_evals must be >= 1");
    if (!(initial_step > 0) || !(convergence_tol > 0)) {
      throw std::invalid_argument("OptimizerConfig: step and tolerance must be > 0");
    }
  }
};

enum class OptimizeStatus { kConverged, kBudgetExhausted, kNonFiniteCost };

constexpr std::string_view to_string(OptimizeStatus s) {
  switch (s) {
    case OptimizeStatus::kConverged: return "converged";
    case OptimizeStatus::kBudgetExhausted: return "budget_exhausted";
    case OptimizeStatus::kNonFiniteCost: return "non_finite_cost";
  }
  return "?";
}

struct OptimizeResult {
  std::vector<double> x;  // best point seen
  double cost = std::numeric_limits<double>::infinity();
  std::vector<double> trace;  // cost of every evaluation, in order
  OptimizeStatus status = OptimizeStatus::kConverged;

  std::size_t evals() const { return trace.size(); }
};

using CostFunction = std::function<double(std::span<const double>)>;

/// Running minimum of a trace.
inline std::vector<double> best_so_far(std::span<const double> trace) {
  std::vector<double> out(trace.begin(), trace.end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::min(out[i], out[i - 1]);
  return out;
}

namespace detail {

struct StopSearch {};

/// Wraps the cost: counts evaluations, records the trace and the best point,
/// and unwinds the search when the budget is spent or a value is not finite.
class Evaluator {
 public:
  Evaluator(const CostFunction& f, std::size_t budget, OptimizeResult& out)
      : f_(f), budget_(budget), out_(out) {}

  double operator()(const Eigen::VectorXd& x) {
    if (out_.trace.size() >= budget_) {
      out_.status = OptimizeStatus::kBudgetExhausted;
      throw StopSearch{};
    }
    const double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    out_.trace.push_back(v);
    if (!std::isfinite(v)) {
      out_.status = OptimizeStatus::kNonFiniteCost;
      throw StopSearch{};
    }
    if (out_.x.empty() || v < out_.cost) {
      out_.cost = v;
      out_.x.assign(x.data(), x.data() + x.size());
    }
    return v;
  }

 private:
  const CostFunction& f_;
  std::size_t budget_;
  OptimizeResult& out_;
};

/// Unconstrained COBYLA-style iteration. The simplex is a pivot x0 plus n
/// vertices x0 + d_j (rows of D); the linear model's gradient is D^{-1} df.
inline void cobyla(Evaluator& eval, Eigen::VectorXd x0, const OptimizerConfig& cfg) {
  const Eigen::Index n = x0.size();
  constexpr double kAlpha = 0.25, kBeta = 2.1, kGamma = 0.5, kDelta = 1.1;
  const double rho_end = std::min(cfg.convergence_tol, cfg.initial_step);
  double rho = cfg.initial_step;

  double f0 = eval(x0);
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n) * rho;
  Eigen::VectorXd fv(n);
  // A vertex that beats the base becomes the new base; later vertices are
  // placed around it.
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::RowVectorXd dj = d.row(j);
    const double fj = eval(x0 + dj.transpose());
    if (fj < f0) {
      x0 += dj.transpose();
      for (Eigen::Index k = 0; k < j; ++k) d.row(k) -= dj;
      d.row(j) = -dj;
      fv[j] = f0;
      f0 = fj;
    } else {
      fv[j] = fj;
    }
  }
  Eigen::MatrixXd dinv = d.inverse();

  auto switch_pivot = [&]() {
    Eigen::Index l;
    const double fmin = fv.minCoeff(&l);
    if (!(fmin < f0)) return;
    const Eigen::RowVectorXd dl = d.row(l);
    x0 += dl.transpose();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != l) d.row(k) -= dl;
    }
    d.row(l) = -dl;
    dinv.col(l) = -dinv.rowwise().sum();
    std::swap(fv[l], f0);
  };

  int replacements = 0;
  auto replace_vertex = [&](Eigen::Index j, const Eigen::VectorXd& s, double fs) {
    const Eigen::VectorXd lambda = dinv.transpose() * s;
    const Eigen::VectorXd cj = dinv.col(j) / lambda[j];
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != j) dinv.col(k) -= cj * lambda[k];
    }
    dinv.col(j) = cj;
    d.row(j) = s.transpose();
    fv[j] = fs;
    if (++replacements % (4 * static_cast<int>(n) + 4) == 0) {
      dinv = d.partialPivLu().inverse();
    }
  };

  // geometry_pending: the last trust-region step failed on a simplex that
  // was not acceptable, so the next iteration may improve the geometry.
  bool geometry_pending = false;
  Eigen::VectorXd vsig(n), veta(n);
  while (true) {
    switch_pivot();
    const Eigen::VectorXd df = fv.array() - f0;
    const Eigen::VectorXd g = dinv * df;
    const double parsig = kAlpha * rho, pareta = kBeta * rho;
    bool acceptable = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      vsig[j] = 1.0 / dinv.col(j).norm();
      veta[j] = d.row(j).norm();
      if (vsig[j] < parsig || veta[j] > pareta) acceptable = false;
    }

    if (geometry_pending && !acceptable) {
      // Drop the vertex furthest from the pivot, else the one closest to
      // the opposite face; move it along the face normal.
      Eigen::Index jdrop = -1;
      double temp = pareta;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (veta[j] > temp) {
          jdrop = j;
          temp = veta[j];
        }
      }
      if (jdrop < 0) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (vsig[j] < temp) {
            jdrop = j;
            temp = vsig[j];
          }
        }
      }
      Eigen::VectorXd step = kGamma * rho * vsig[jdrop] * dinv.col(jdrop);
      if (g.dot(step) > 0) step = -step;
      const double fs = eval(x0 + step);
      replace_vertex(jdrop, step, fs);
      geometry_pending = false;
      continue;
    }
    geometry_pending = false;

    // Trust-region step on the linear model.
    const double gnorm = g.norm();
    bool improved = false;
    if (gnorm > 0 && std::isfinite(gnorm)) {
      const Eigen::VectorXd s = -rho * g / gnorm;
      const double prerem = rho * gnorm;
      const double fs = eval(x0 + s);
      const double trured = f0 - fs;

      const Eigen::VectorXd lambda = dinv.transpose() * s;
      Eigen::Index jdrop = -1;
      double ratio = trured > 0 ? 0.0 : 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(lambda[j]) > ratio) {
          jdrop = j;
          ratio = std::abs(lambda[j]);
        }
      }
      double edgmax = kDelta * rho;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double sigbar = std::abs(lambda[j]) * vsig[j];
        if (sigbar >= parsig || sigbar >= vsig[j]) {
          const double dist = trured > 0 ? (s - d.row(j).transpose()).norm() : veta[j];
          if (dist > edgmax) {
            jdrop = j;
            edgmax = dist;
          }
        }
      }
      if (jdrop >= 0 && lambda[jdrop] != 0.0) {
        replace_vertex(jdrop, s, fs);
        improved = trured > 0 && trured >= 0.1 * prerem;
      }
    }
    if (improved) continue;
    if (!acceptable) {
      geometry_pending = true;
      continue;
    }
    if (rho <= rho_end) return;
    rho *= 0.5;
    if (rho <= 1.5 * rho_end) rho = rho_end;
  }
}

inline void nelder_mead(Evaluator& eval, const Eigen::VectorXd& x0, const OptimizerConfig& cfg) {
  const Eigen::Index n = x0.size();
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> fs(n + 1);
  fs[0] = eval(x0);
  for (Eigen::Index j = 0; j < n; ++j) {
    pts[j + 1][j] += cfg.initial_step;
    fs[j + 1] = eval(pts[j + 1]);
  }
  std::vector<std::size_t> order(n + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    double size = 0.0;
    for (const auto& p : pts) size = std::max(size, (p - pts[best]).lpNorm<Eigen::Infinity>());
    if (size <= cfg.convergence_tol && fs[worst] - fs[best] <= cfg.convergence_tol) return;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < order.size() - 1; ++k) centroid += pts[order[k]];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < fs[best]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fs[worst] = fe;
      } else {
        pts[worst] = xr;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second]) {
      pts[worst] = xr;
      fs[worst] = fr;
      continue;
    }
    const bool outside = fr < fs[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                       : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : fs[worst])) {
      pts[worst] = xc;
      fs[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == best) continue;
      pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
      fs[k] = eval(pts[k]);
    }
  }
}

}  // namespace detail

/// Minimizes `cost` from `x0`. Never evaluates more than cfg.max_evals times;
/// returns the best point seen, its cost and the per-evaluation trace.
inline OptimizeResult minimize(const CostFunction& cost, std::span<const double> x0,
                               const OptimizerConfig& cfg) {
  cfg.validate();
  for (double v : x0) {
    if (!std::isfinite(v)) throw std::invalid_argument("minimize: x0 must be finite");
  }
  OptimizeResult out;
  out.trace.reserve(std::min<std::size_t>(cfg.max_evals, 1 << 16));
  detail::Evaluator eval(cost, cfg.max_evals, out);
  const Eigen::VectorXd start =
      Eigen::Map<const Eigen::VectorXd>(x0.data(), static_cast<Eigen::Index>(x0.size()));
  try {
    if (start.size() == 0) {
      eval(start);
    } else if (cfg.method == OptimizerMethod::kCobyla) {
      detail::cobyla(eval, start, cfg);
    } else {
      detail::nelder_mead(eval, start, cfg);
    }
    out.status = OptimizeStatus::kConverged;
  } catch (const detail::StopSearch&) {
  }
  return out;
}

}  // namespace pcbrick
