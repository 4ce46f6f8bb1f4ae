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

// Variational energy minimization and fidelity learning on top of the
// circuit builders, with seeded, order-independent randomness.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcbrick/circuits.hpp"
#include "pcbrick/models.hpp"
#include "pcbrick/optimize.hpp"
#include "pcbrick/pauli.hpp"
#include "pcbrick/rng.hpp"

namespace pcbrick {

// ---------------------------------------------------------------------------
// Costs

inline void check_sizes(const ParamCircuit& c, const PauliHamiltonian& h) {
  if (h.num_sites != c.num_qubits) {
    throw std::invalid_argument("Hamiltonian has " + std::to_string(h.num_sites) +
                                " sites but the circuit has " + std::to_string(c.num_qubits));
  }
}

/// <psi(theta)|H|psi(theta)>, exact.
inline double energy_cost(const ParamCircuit& c, std::span<const double> theta,
                          const PauliHamiltonian& h) {
  check_sizes(c, h);
  return expectation(bind(c, theta), h);
}

/// Shot estimate of the energy; every Pauli term gets `shots` shots.
template <typename Rng>
double energy_cost(const ParamCircuit& c, std::span<const double> theta, const PauliHamiltonian& h,
                   std::uint64_t shots, Rng& rng) {
  check_sizes(c, h);
  return estimate_expectation(bind(c, theta), std::span<const PauliString>(h.terms), shots, rng);
}

/// |<target|psi(theta)>|^2.
inline double fidelity_cost(const ParamCircuit& c, std::span<const double> theta,
                            const Statevector& target) {
  const Statevector psi = bind(c, theta);
  if (psi.num_qubits() != target.num_qubits()) {
    throw std::invalid_argument("fidelity_cost: target has the wrong number of qubits");
  }
  return std::min(1.0, std::norm(inner_product(target, psi)));
}

/// Haar-random state of H_{N,L}: i.i.d. complex normal amplitudes on the
/// weight-N basis states, normalized.
template <typename Rng>
Statevector sample_haar_fock_state(int num_sites, int num_particles, Rng& rng) {
  check_occupation(num_sites, num_particles);
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(std::size_t{1} << num_sites, Complex{0.0, 0.0});
  for (std::uint64_t idx : fock_basis(num_sites, num_particles)) {
    const double re = normal(rng);
    const double im = normal(rng);
    amps[idx] = Complex(re, im);
  }
  Statevector s = Statevector::from_amplitudes(std::move(amps));
  s.normalize();
  return s;
}

/// round(1000 * d_{N,L} / 6): 1000 evaluations at (L, N) = (4, 2), scaled with
/// the Fock dimension.
inline std::size_t evaluation_budget(int num_sites, int num_particles) {
  const auto d = static_cast<double>(fock_dimension(num_sites, num_particles));
  return static_cast<std::size_t>(std::llround(1000.0 * d / 6.0));
}

/// theta0 ~ U[-pi, pi)^count from the (seed, sample, trial) stream. Arms with
/// fewer parameters see a prefix of the same draws.
inline std::vector<double> initial_parameters(std::uint64_t seed, std::uint64_t sample,
                                              std::uint64_t trial, std::size_t count) {
  CounterRng rng(stream_seed(seed, Stream::kInitialParameters, sample, trial));
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(count);
  for (auto& v : out) {
    v = u(rng);
    if (v >= std::numbers::pi) v = -std::numbers::pi;
  }
  return out;
}

inline Statevector haar_target(std::uint64_t seed, std::uint64_t sample, int num_sites,
                               int num_particles) {
  CounterRng rng(stream_seed(seed, Stream::kHaarSample, sample));
  return sample_haar_fock_state(num_sites, num_particles, rng);
}

// ---------------------------------------------------------------------------
// Experiment configuration

struct AnsatzSpec {
  PCGateKind kind = PCGateKind::G;
  bool extended = false;
  std::optional<int> layers;               // default: layer_count(L, N)
  std::optional<std::size_t> free_params;  // default: every slot free
  double fixed_value = 0.0;
};

inline ParamCircuit build_ansatz(int num_sites, int num_particles, const AnsatzSpec& a) {
  ParamCircuit c = a.extended ? build_brickwall_extended(num_sites, num_particles, a.kind, a.layers)
                              : build_brickwall(num_sites, num_particles, a.kind, a.layers);
  if (a.free_params) c = with_free_params(std::move(c), *a.free_params, a.fixed_value);
  return c;
}

struct EnergyExperimentConfig {
  std::string model = "xxz";
  int num_sites = 4;
  std::optional<int> num_particles;  // default: floor(L / 2)
  double gamma = 1.0;
  AnsatzSpec ansatz;
  int trials = 10;
  std::optional<std::size_t> budget;  // default: evaluation_budget(L, N)
  std::optional<std::uint64_t> shots;  // empty: exact expectation values
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;

  int particles() const { return num_particles.value_or(num_sites / 2); }
  std::size_t evals() const { return budget.value_or(evaluation_budget(num_sites, particles())); }
};

struct FidelityExperimentConfig {
  int num_sites = 4;
  std::optional<int> num_particles;
  AnsatzSpec ansatz;
  int samples = 25;
  int trials = 5;
  std::optional<std::size_t> budget;
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;

  int particles() const { return num_particles.value_or(num_sites / 2); }
  std::size_t evals() const { return budget.value_or(evaluation_budget(num_sites, particles())); }
};

inline nlohmann::ordered_json to_json(const OptimizerConfig& o) {
  return {{"method", std::string(to_string(o.method))},
          {"max_evals", o.max_evals},
          {"initial_step", o.initial_step},
          {"convergence_tol", o.convergence_tol},
          {"seed", o.seed}};
}

inline nlohmann::ordered_json to_json(const AnsatzSpec& a, int num_sites, int num_particles) {
  return {{"gate", std::string(to_string(a.kind))},
          {"extended", a.extended},
          {"layers", a.layers.value_or(layer_count(num_sites, num_particles))},
          {"free_params", a.free_params ? nlohmann::ordered_json(*a.free_params) : nlohmann::ordered_json(nullptr)},
          {"fixed_value", a.fixed_value}};
}

/// Fully resolved configuration (defaults filled in).
inline nlohmann::ordered_json to_json(const EnergyExperimentConfig& c) {
  OptimizerConfig o = c.optimizer;
  o.max_evals = c.evals();
  return {{"model", c.model},
          {"L", c.num_sites},
          {"N", c.particles()},
          {"gamma", c.gamma},
          {"ansatz", to_json(c.ansatz, c.num_sites, c.particles())},
          {"trials", c.trials},
          {"budget", c.evals()},
          {"shots", c.shots ? nlohmann::ordered_json(*c.shots) : nlohmann::ordered_json(nullptr)},
          {"optimizer", to_json(o)},
          {"seed", c.seed}};
}

inline nlohmann::ordered_json to_json(const FidelityExperimentConfig& c) {
  OptimizerConfig o = c.optimizer;
  o.max_evals = c.evals();
  return {{"L", c.num_sites},
          {"N", c.particles()},
          {"ansatz", to_json(c.ansatz, c.num_sites, c.particles())},
          {"samples", c.samples},
          {"trials", c.trials},
          {"budget", c.evals()},
          {"optimizer", to_json(o)},
          {"seed", c.seed}};
}

// ---------------------------------------------------------------------------
// Results

struct TrialResult {
  std::size_t sample = 0;
  std::size_t trial = 0;
  std::uint64_t init_seed = 0;
  std::vector<double> theta0;
  std::vector<double> theta_opt;
  double initial_cost = 0.0;
  double cost_opt = 0.0;
  std::size_t evals = 0;
  OptimizeStatus status = OptimizeStatus::kConverged;
  std::vector<double> trace;
  /// Energy runs: exact energy at theta_opt and its relative error.
  double energy = std::numeric_limits<double>::quiet_NaN();
  double relative_error = std::numeric_limits<double>::quiet_NaN();
  /// Fidelity runs: F at theta_opt (= 1 - cost_opt).
  double fidelity = std::numeric_limits<double>::quiet_NaN();

  bool ok() const { return status != OptimizeStatus::kNonFiniteCost && !theta_opt.empty(); }
};

struct EnergyAggregates {
  double ground_energy = 0.0;           // E0 in the N sector
  double mean_energy = 0.0;             // E-bar over successful trials
  double relative_error = 0.0;          // (E-bar - E0) / |E0|
  double median_relative_error = 0.0;   // median over trials
};

struct FidelityAggregates {
  std::vector<double> sample_fidelity;  // F-bar_i
  std::vector<double> sample_error;     // eps_i = 1 - F-bar_i
  double mean_fidelity = 0.0;           // F-bar
  double mean_error = 0.0;              // eps-bar = 1 - F-bar
};

struct ExperimentResult {
  std::string experiment;  // "energy" or "fidelity"
  nlohmann::ordered_json config;
  nlohmann::ordered_json circuit;
  std::size_t trials_per_sample = 0;
  std::vector<TrialResult> trials;
  std::size_t failures = 0;
  std::optional<EnergyAggregates> energy;
  std::optional<FidelityAggregates> fidelity;

  /// Row index used in trace files: sample * trials_per_sample + trial.
  std::size_t trace_index(const TrialResult& t) const {
    return t.sample * trials_per_sample + t.trial;
  }
};

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline EnergyAggregates aggregate_energy(const std::vector<TrialResult>& trials,
                                         double ground_energy) {
  EnergyAggregates a;
  a.ground_energy = ground_energy;
  std::vector<double> rel;
  double sum = 0.0;
  for (const auto& t : trials) {
    if (!t.ok()) continue;
    sum += t.energy;
    rel.push_back(t.relative_error);
  }
  a.mean_energy = rel.empty() ? std::numeric_limits<double>::quiet_NaN()
                              : sum / static_cast<double>(rel.size());
  a.relative_error = (a.mean_energy - ground_energy) / std::abs(ground_energy);
  a.median_relative_error = median(rel);
  return a;
}

inline FidelityAggregates aggregate_fidelity(const std::vector<TrialResult>& trials,
                                             std::size_t samples) {
  FidelityAggregates a;
  std::vector<double> sum(samples, 0.0);
  std::vector<std::size_t> count(samples, 0);
  for (const auto& t : trials) {
    if (!t.ok()) continue;
    sum.at(t.sample) += t.fidelity;
    ++count.at(t.sample);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = count[i] ? sum[i] / static_cast<double>(count[i])
                              : std::numeric_limits<double>::quiet_NaN();
    a.sample_fidelity.push_back(f);
    a.sample_error.push_back(1.0 - f);
    total += f;
  }
  a.mean_fidelity = total / static_cast<double>(samples);
  a.mean_error = 1.0 - a.mean_fidelity;
  return a;
}

// ---------------------------------------------------------------------------
// Runners

namespace detail {

inline TrialResult run_trial(const CostFunction& cost, std::size_t sample, std::size_t trial,
                             std::uint64_t seed, std::size_t num_params,
                             const OptimizerConfig& opt) {
  TrialResult t;
  t.sample = sample;
  t.trial = trial;
  t.init_seed = stream_seed(seed, Stream::kInitialParameters, sample, trial);
  t.theta0 = initial_parameters(seed, sample, trial, num_params);
  OptimizeResult r = minimize(cost, t.theta0, opt);
  t.initial_cost = r.trace.empty() ? std::numeric_limits<double>::quiet_NaN() : r.trace.front();
  t.theta_opt = std::move(r.x);
  t.cost_opt = r.cost;
  t.evals = r.trace.size();
  t.status = r.status;
  t.trace = std::move(r.trace);
  return t;
}

}  // namespace detail

/// N_T independent energy minimizations. Trial t starts from
/// initial_parameters(seed, 0, t, #params); in shots mode evaluation k of
/// trial t draws its shots from stream (seed, shots, t, k).
inline ExperimentResult run_energy_experiment(const EnergyExperimentConfig& cfg,
                                              const PauliHamiltonian& h) {
  if (cfg.trials < 1) throw std::invalid_argument("run_energy_experiment: trials must be >= 1");
  if (cfg.shots && *cfg.shots < 1) throw std::invalid_argument("shots must be >= 1");
  const int n = cfg.particles();
  const ParamCircuit circuit = build_ansatz(cfg.num_sites, n, cfg.ansatz);
  check_sizes(circuit, h);
  OptimizerConfig opt = cfg.optimizer;
  opt.max_evals = cfg.evals();
  opt.seed = cfg.seed;

  ExperimentResult res;
  res.experiment = "energy";
  res.config = to_json(cfg);
  res.circuit = to_json(circuit);
  res.trials_per_sample = static_cast<std::size_t>(cfg.trials);
  const double e0 = exact_ground_energy(h, n).ground_energy;

  for (int t = 0; t < cfg.trials; ++t) {
    std::uint64_t eval_index = 0;
    CostFunction cost;
    if (cfg.shots) {
      cost = [&, t](std::span<const double> theta) {
        CounterRng rng(stream_seed(cfg.seed, Stream::kShots, static_cast<std::uint64_t>(t),
                                   eval_index++));
        return energy_cost(circuit, theta, h, *cfg.shots, rng);
      };
    } else {
      cost = [&](std::span<const double> theta) { return energy_cost(circuit, theta, h); };
    }
    TrialResult tr = detail::run_trial(cost, 0, static_cast<std::size_t>(t), cfg.seed,
                                       circuit.num_free_params, opt);
    if (tr.ok()) {
      tr.energy = cfg.shots ? energy_cost(circuit, tr.theta_opt, h) : tr.cost_opt;
      tr.relative_error = (tr.energy - e0) / std::abs(e0);
    } else {
      ++res.failures;
    }
    res.trials.push_back(std::move(tr));
  }
  res.energy = aggregate_energy(res.trials, e0);
  return res;
}

inline ExperimentResult run_energy_experiment(const EnergyExperimentConfig& cfg) {
  return run_energy_experiment(cfg, model_hamiltonian(cfg.model, cfg.num_sites, cfg.gamma));
}

/// For each of N_S Haar-random targets, N_T minimizations of 1 - F. Sample i
/// uses target stream (seed, haar, i) and initial points (seed, init, i, t).
inline ExperimentResult run_fidelity_experiment(const FidelityExperimentConfig& cfg) {
  if (cfg.samples < 1 || cfg.trials < 1) {
    throw std::invalid_argument("run_fidelity_experiment: samples and trials must be >= 1");
  }
  const int n = cfg.particles();
  const ParamCircuit circuit = build_ansatz(cfg.num_sites, n, cfg.ansatz);
  OptimizerConfig opt = cfg.optimizer;
  opt.max_evals = cfg.evals();
  opt.seed = cfg.seed;

  ExperimentResult res;
  res.experiment = "fidelity";
  res.config = to_json(cfg);
  res.circuit = to_json(circuit);
  res.trials_per_sample = static_cast<std::size_t>(cfg.trials);
  for (int i = 0; i < cfg.samples; ++i) {
    const Statevector target = haar_target(cfg.seed, static_cast<std::uint64_t>(i),
                                           cfg.num_sites, n);
    const CostFunction cost = [&](std::span<const double> theta) {
      return 1.0 - fidelity_cost(circuit, theta, target);
    };
    for (int t = 0; t < cfg.trials; ++t) {
      TrialResult tr = detail::run_trial(cost, static_cast<std::size_t>(i),
                                         static_cast<std::size_t>(t), cfg.seed,
                                         circuit.num_free_params, opt);
      if (tr.ok()) {
        tr.fidelity = 1.0 - tr.cost_opt;
      } else {
        ++res.failures;
      }
      res.trials.push_back(std::move(tr));
    }
  }
  res.fidelity = aggregate_fidelity(res.trials, static_cast<std::size_t>(cfg.samples));
  return res;
}

// ---------------------------------------------------------------------------
// Persistence

namespace detail {

/// JSON has no NaN; non-finite values are stored as null.
inline nlohmann::ordered_json num(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline double num(const nlohmann::ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline OptimizeStatus parse_status(const std::string& s) {
  for (auto st : {OptimizeStatus::kConverged, OptimizeStatus::kBudgetExhausted,
                  OptimizeStatus::kNonFiniteCost}) {
    if (s == to_string(st)) return st;
  }
  throw std::invalid_argument("unknown optimizer status '" + s + "'");
}

}  // namespace detail

/// Everything except the traces, which go to the CSV file.
inline nlohmann::ordered_json to_json(const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["config"] = r.config;
  j["circuit"] = r.circuit;
  j["trials_per_sample"] = r.trials_per_sample;
  j["failures"] = r.failures;
  auto& ts = j["trials"] = nlohmann::ordered_json::array();
  for (const auto& t : r.trials) {
    nlohmann::ordered_json tj;
    tj["sample"] = t.sample;
    tj["trial"] = t.trial;
    tj["init_seed"] = t.init_seed;
    tj["status"] = std::string(to_string(t.status));
    tj["evals"] = t.evals;
    tj["initial_cost"] = detail::num(t.initial_cost);
    tj["cost_opt"] = detail::num(t.cost_opt);
    if (r.experiment == "energy") {
      tj["energy"] = detail::num(t.energy);
      tj["relative_error"] = detail::num(t.relative_error);
    } else {
      tj["fidelity"] = detail::num(t.fidelity);
    }
    tj["theta0"] = t.theta0;
    tj["theta_opt"] = t.theta_opt;
    ts.push_back(std::move(tj));
  }
  nlohmann::ordered_json agg;
  if (r.energy) {
    agg["ground_energy"] = detail::num(r.energy->ground_energy);
    agg["mean_energy"] = detail::num(r.energy->mean_energy);
    agg["relative_error"] = detail::num(r.energy->relative_error);
    agg["median_relative_error"] = detail::num(r.energy->median_relative_error);
  }
  if (r.fidelity) {
    agg["mean_fidelity"] = detail::num(r.fidelity->mean_fidelity);
    agg["mean_error"] = detail::num(r.fidelity->mean_error);
    auto& sf = agg["sample_fidelity"] = nlohmann::ordered_json::array();
    for (double v : r.fidelity->sample_fidelity) sf.push_back(detail::num(v));
    auto& se = agg["sample_error"] = nlohmann::ordered_json::array();
    for (double v : r.fidelity->sample_error) se.push_back(detail::num(v));
  }
  j["aggregates"] = std::move(agg);
  return j;
}

inline ExperimentResult result_from_json(const nlohmann::ordered_json& j) {
  ExperimentResult r;
  r.experiment = j.at("experiment").get<std::string>();
  if (r.experiment != "energy" && r.experiment != "fidelity") {
    throw std::invalid_argument("result JSON: unknown experiment '" + r.experiment + "'");
  }
  r.config = j.at("config");
  r.circuit = j.at("circuit");
  r.trials_per_sample = j.at("trials_per_sample").get<std::size_t>();
  r.failures = j.at("failures").get<std::size_t>();
  for (const auto& tj : j.at("trials")) {
    TrialResult t;
    t.sample = tj.at("sample").get<std::size_t>();
    t.trial = tj.at("trial").get<std::size_t>();
    t.init_seed = tj.at("init_seed").get<std::uint64_t>();
    t.status = detail::parse_status(tj.at("status").get<std::string>());
    t.evals = tj.at("evals").get<std::size_t>();
    t.initial_cost = detail::num(tj.at("initial_cost"));
    t.cost_opt = detail::num(tj.at("cost_opt"));
    if (r.experiment == "energy") {
      t.energy = detail::num(tj.at("energy"));
      t.relative_error = detail::num(tj.at("relative_error"));
    } else {
      t.fidelity = detail::num(tj.at("fidelity"));
    }
    t.theta0 = tj.at("theta0").get<std::vector<double>>();
    t.theta_opt = tj.at("theta_opt").get<std::vector<double>>();
    r.trials.push_back(std::move(t));
  }
  const auto& agg = j.at("aggregates");
  if (r.experiment == "energy") {
    EnergyAggregates a;
    a.ground_energy = detail::num(agg.at("ground_energy"));
    a.mean_energy = detail::num(agg.at("mean_energy"));
    a.relative_error = detail::num(agg.at("relative_error"));
    a.median_relative_error = detail::num(agg.at("median_relative_error"));
    r.energy = a;
  } else {
    FidelityAggregates a;
    a.mean_fidelity = detail::num(agg.at("mean_fidelity"));
    a.mean_error = detail::num(agg.at("mean_error"));
    for (const auto& v : agg.at("sample_fidelity")) a.sample_fidelity.push_back(detail::num(v));
    for (const auto& v : agg.at("sample_error")) a.sample_error.push_back(detail::num(v));
    r.fidelity = a;
  }
  return r;
}

/// Recomputes the aggregates from the per-trial records and returns the
/// largest absolute difference to the stored ones (NaN-aware: a NaN on only
/// one side counts as infinite).
inline double aggregate_discrepancy(const ExperimentResult& r) {
  double worst = 0.0;
  auto cmp = [&](double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return;
    if (std::isnan(a) || std::isnan(b)) {
      worst = std::numeric_limits<double>::infinity();
      return;
    }
    worst = std::max(worst, std::abs(a - b));
  };
  if (r.energy) {
    const EnergyAggregates a = aggregate_energy(r.trials, r.energy->ground_energy);
    cmp(a.mean_energy, r.energy->mean_energy);
    cmp(a.relative_error, r.energy->relative_error);
    cmp(a.median_relative_error, r.energy->median_relative_error);
  }
  if (r.fidelity) {
    const FidelityAggregates a = aggregate_fidelity(r.trials, r.fidelity->sample_fidelity.size());
    cmp(a.mean_fidelity, r.fidelity->mean_fidelity);
    cmp(a.mean_error, r.fidelity->mean_error);
    for (std::size_t i = 0; i < a.sample_fidelity.size(); ++i) {
      cmp(a.sample_fidelity[i], r.fidelity->sample_fidelity[i]);
      cmp(a.sample_error[i], r.fidelity->sample_error[i]);
    }
  }
  return worst;
}

/// Header `trial,eval,cost`, one row per evaluation; eval counts from 0.
inline void write_trace_csv(std::ostream& os, const ExperimentResult& r) {
  os << "trial,eval,cost\n";
  char buf[64];
  for (const auto& t : r.trials) {
    const std::size_t row = r.trace_index(t);
    for (std::size_t k = 0; k < t.trace.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", t.trace[k]);
      os << row << ',' << k << ',' << buf << '\n';
    }
  }
}

/// Trace per trial row index.
inline std::map<std::size_t, std::vector<double>> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "trial,eval,cost") {
    throw std::invalid_argument("trace CSV: expected header 'trial,eval,cost'");
  }
  std::map<std::size_t, std::vector<double>> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t trial = 0, eval = 0;
    double cost = 0.0;
    char c1 = 0, c2 = 0;
    std::string cost_str;
    if (!(ls >> trial >> c1 >> eval >> c2) || c1 != ',' || c2 != ',' || !std::getline(ls, cost_str)) {
      throw std::invalid_argument("trace CSV: malformed line " + std::to_string(lineno));
    }
    cost = std::stod(cost_str);
    auto& v = out[trial];
    if (eval != v.size()) {
      throw std::invalid_argument("trace CSV: evaluations out of order at line " +
                                  std::to_string(lineno));
    }
    v.push_back(cost);
  }
  return out;
}

/// Copies traces read from CSV into the matching trials.
inline void attach_traces(ExperimentResult& r,
                          const std::map<std::size_t, std::vector<double>>& traces) {
  for (auto& t : r.trials) {
    auto it = traces.find(r.trace_index(t));
    t.trace = it == traces.end() ? std::vector<double>{} : it->second;
  }
}

}  // namespace pcbrick
