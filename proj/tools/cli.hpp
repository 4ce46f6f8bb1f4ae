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

// Command-line front end. run_cli() is the whole program minus main(), so
// tests can drive it with argument vectors and capture both streams.
//
// Configuration: a JSON object passed with --config supplies values; flags
// given on the command line override them. Keys are the long flag names with
// '-' replaced by '_'. Unknown keys are rejected.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pcbrick/pcbrick.hpp"

namespace pcbrick::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag values or config contents; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class KeyType { kInt, kUInt, kDouble, kString, kFlag };

struct KeySpec {
  std::string key;  // JSON key; the flag is "--" + key with '_' -> '-'
  KeyType type;
  std::string help;
};

namespace detail {

inline std::string flag_name(const std::string& key) {
  std::string f = "--" + key;
  for (auto& c : f)
    if (c == '_') c = '-';
  return f;
}

inline nlohmann::json parse_value(const KeySpec& k, const std::string& s) {
  std::size_t pos = 0;
  try {
    switch (k.type) {
      case KeyType::kInt: {
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) break;
        return v;
      }
      case KeyType::kUInt: {
        if (!s.empty() && s[0] == '-') break;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) break;
        return v;
      }
      case KeyType::kDouble: {
        const double v = std::stod(s, &pos);
        if (pos != s.size()) break;
        return v;
      }
      case KeyType::kString: return s;
      case KeyType::kFlag: return true;
    }
  } catch (const std::logic_error&) {
  }
  throw UsageError("invalid value '" + s + "' for " + flag_name(k.key));
}

inline void check_type(const KeySpec& k, const nlohmann::json& v) {
  bool ok = false;
  switch (k.type) {
    case KeyType::kInt: ok = v.is_number_integer(); break;
    case KeyType::kUInt: ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); break;
    case KeyType::kDouble: ok = v.is_number(); break;
    case KeyType::kString: ok = v.is_string(); break;
    case KeyType::kFlag: ok = v.is_boolean(); break;
  }
  if (!ok && !v.is_null()) {
    throw UsageError("config key '" + k.key + "' has the wrong type");
  }
}

}  // namespace detail

/// Options of one subcommand bound to strings, plus the --config path.
class Options {
 public:
  Options(CLI::App* app, std::vector<KeySpec> keys) : keys_(std::move(keys)) {
    values_.resize(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      const auto& k = keys_[i];
      if (k.type == KeyType::kFlag) {
        opts_.push_back(app->add_flag(detail::flag_name(k.key), k.help));
      } else {
        opts_.push_back(app->add_option(detail::flag_name(k.key), values_[i], k.help));
      }
    }
    app->add_option("--config", config_path_, "JSON file with option values");
  }

  /// File values overlaid with command-line values.
  nlohmann::json resolve() const {
    nlohmann::json cfg = nlohmann::json::object();
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw UsageError("cannot read config file " + config_path_);
      try {
        in >> cfg;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file " + config_path_ + " is not valid JSON: " + e.what());
      }
      if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
      for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const KeySpec* spec = find(it.key());
        if (!spec) throw UsageError("unknown config key '" + it.key() + "'");
        detail::check_type(*spec, it.value());
      }
    }
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (opts_[i]->count() > 0) cfg[keys_[i].key] = detail::parse_value(keys_[i], values_[i]);
    }
    return cfg;
  }

 private:
  const KeySpec* find(const std::string& key) const {
    for (const auto& k : keys_)
      if (k.key == key) return &k;
    return nullptr;
  }

  std::vector<KeySpec> keys_;
  std::vector<std::string> values_;
  std::vector<CLI::Option*> opts_;
  std::string config_path_;
};

namespace detail {

template <typename T>
T get_or(const nlohmann::json& cfg, const std::string& key, T fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end() || it->is_null()) return fallback;
  return it->get<T>();
}

template <typename T>
std::optional<T> get_opt(const nlohmann::json& cfg, const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

inline std::vector<KeySpec> optimizer_keys() {
  return {{"optimizer", KeyType::kString, "cobyla or nelder-mead"},
          {"initial_step", KeyType::kDouble, "initial trust radius / simplex edge"},
          {"tol", KeyType::kDouble, "final trust radius / simplex size"}};
}

inline std::vector<KeySpec> ansatz_keys() {
  return {{"sites", KeyType::kInt, "number of qubits L"},
          {"particles", KeyType::kInt, "particle number N (default floor(L/2))"},
          {"gate", KeyType::kString, "gate kind A, B or G"},
          {"layers", KeyType::kInt, "number of layers (default ceil(d/(L-1)))"},
          {"extended", KeyType::kFlag, "alternate NN and NNN layers"},
          {"free_params", KeyType::kUInt, "free parameters; the rest are fixed"},
          {"fixed_value", KeyType::kDouble, "value of the fixed parameters"},
          {"trials", KeyType::kInt, "trials N_T"},
          {"budget", KeyType::kUInt, "cost evaluations per trial"}};
}

inline OptimizerConfig optimizer_from(const nlohmann::json& cfg) {
  OptimizerConfig o;
  o.method = parse_optimizer_method(get_or<std::string>(cfg, "optimizer", "cobyla"));
  o.initial_step = get_or(cfg, "initial_step", o.initial_step);
  o.convergence_tol = get_or(cfg, "tol", o.convergence_tol);
  o.validate();
  return o;
}

inline AnsatzSpec ansatz_from(const nlohmann::json& cfg) {
  AnsatzSpec a;
  a.kind = parse_gate_kind(get_or<std::string>(cfg, "gate", "G"));
  a.extended = get_or(cfg, "extended", false);
  a.layers = get_opt<int>(cfg, "layers");
  a.free_params = get_opt<std::size_t>(cfg, "free_params");
  a.fixed_value = get_or(cfg, "fixed_value", 0.0);
  return a;
}

inline std::string trace_path_for(const nlohmann::json& cfg, const std::string& output) {
  if (auto t = get_opt<std::string>(cfg, "trace")) return *t;
  return std::filesystem::path(output).replace_extension(".csv").string();
}

inline void write_result(const ExperimentResult& r, const std::string& json_path,
                         const std::string& csv_path) {
  write_file(json_path, to_json(r).dump(2) + "\n");
  std::ostringstream csv;
  write_trace_csv(csv, r);
  write_file(csv_path, csv.str());
}

}  // namespace detail

/// Fault injection for the negative test of `gates verify`: flips the sign of
/// the off-diagonal hopping entries of gate B.
inline GateProvider faulty_provider() {
  GateProvider gp;
  gp.matrix = [](PCGateKind k, std::span<const double> p) {
    GateMatrix2 m = gate_matrix(k, p);
    if (k == PCGateKind::B) {
      m(1, 2) = -m(1, 2);
      m(2, 1) = -m(2, 1);
    }
    return m;
  };
  return gp;
}

inline int cmd_gates_verify(const nlohmann::json& cfg, bool inject_fault, std::ostream& out) {
  const int draws = detail::get_or(cfg, "draws", 100);
  if (draws < 1) throw UsageError("--draws must be >= 1");
  const auto seed = detail::get_or<std::uint64_t>(cfg, "seed", 0);
  const VerifyReport rep =
      run_gate_checks(inject_fault ? faulty_provider() : GateProvider{}, seed, draws);
  print_report(out, rep);
  if (auto path = detail::get_opt<std::string>(cfg, "output")) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["draws"] = draws;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      j["checks"].push_back({{"name", c.name},
                             {"max_residual", c.max_residual},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
    }
    j["cnot_counts"] = {{"A", rep.cnot_counts[0]}, {"B", rep.cnot_counts[1]}, {"G", rep.cnot_counts[2]}};
    j["long_range_cnots"] = rep.long_range_cnots;
    j["swap_network_cnots"] = rep.swap_network_cnots;
    j["all_pass"] = rep.all_pass();
    detail::write_file(*path, j.dump(2) + "\n");
  }
  return rep.all_pass() ? kExitOk : kExitFailure;
}

inline int cmd_ed(const nlohmann::json& cfg, std::ostream& out) {
  const std::string model = detail::get_or<std::string>(cfg, "model", "xxz");
  const int sites = detail::get_or(cfg, "sites", 4);
  double gamma = detail::get_or(cfg, "gamma", 1.0);
  if (model == "xx") gamma = 0.0;
  const auto sector = detail::get_opt<int>(cfg, "sector");
  const std::string method_name = detail::get_or<std::string>(cfg, "method", "auto");
  EdMethod method;
  if (method_name == "auto") method = EdMethod::kAuto;
  else if (method_name == "dense") method = EdMethod::kDense;
  else if (method_name == "lanczos") method = EdMethod::kLanczos;
  else throw UsageError("--method must be auto, dense or lanczos");

  PauliHamiltonian h;
  try {
    h = model_hamiltonian(model, sites, gamma);
    if (sites > kMaxEdSites) throw std::invalid_argument("--sites exceeds the cap of 16");
    if (sector) check_occupation(sites, *sector);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SpectralResult r = exact_ground_energy(h, sector, method);
  nlohmann::ordered_json j;
  j["model"] = model;
  j["L"] = sites;
  j["gamma"] = model == "nnn" ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(gamma);
  j["sector"] = sector ? nlohmann::ordered_json(*sector) : nlohmann::ordered_json(nullptr);
  j["ground_energy"] = r.ground_energy;
  j["method"] = method_name;
  j["seed"] = detail::get_or<std::uint64_t>(cfg, "seed", 0);
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (auto path = detail::get_opt<std::string>(cfg, "output")) detail::write_file(*path, text);
  return kExitOk;
}

inline EnergyExperimentConfig energy_config_from(const nlohmann::json& cfg) {
  EnergyExperimentConfig c;
  try {
    c.model = detail::get_or<std::string>(cfg, "model", "xxz");
    c.num_sites = detail::get_or(cfg, "sites", 4);
    c.num_particles = detail::get_opt<int>(cfg, "particles");
    c.gamma = c.model == "xx" ? 0.0 : detail::get_or(cfg, "gamma", 1.0);
    c.ansatz = detail::ansatz_from(cfg);
    c.trials = detail::get_or(cfg, "trials", 10);
    c.budget = detail::get_opt<std::size_t>(cfg, "budget");
    c.shots = detail::get_opt<std::uint64_t>(cfg, "shots");
    c.optimizer = detail::optimizer_from(cfg);
    c.seed = detail::get_or<std::uint64_t>(cfg, "seed", 0);
    if (c.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (c.budget && *c.budget < 1) throw std::invalid_argument("--budget must be >= 1");
    if (c.shots && *c.shots < 1) throw std::invalid_argument("--shots must be >= 1");
    if (c.num_sites > kMaxEdSites) throw std::invalid_argument("--sites exceeds the cap of 16");
    // Build once to surface size errors as usage errors.
    const PauliHamiltonian h = model_hamiltonian(c.model, c.num_sites, c.gamma);
    build_ansatz(c.num_sites, c.particles(), c.ansatz);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

inline FidelityExperimentConfig fidelity_config_from(const nlohmann::json& cfg) {
  FidelityExperimentConfig c;
  try {
    c.num_sites = detail::get_or(cfg, "sites", 4);
    c.num_particles = detail::get_opt<int>(cfg, "particles");
    c.ansatz = detail::ansatz_from(cfg);
    c.samples = detail::get_or(cfg, "samples", 25);
    c.trials = detail::get_or(cfg, "trials", 5);
    c.budget = detail::get_opt<std::size_t>(cfg, "budget");
    c.optimizer = detail::optimizer_from(cfg);
    c.seed = detail::get_or<std::uint64_t>(cfg, "seed", 0);
    if (c.samples < 1 || c.trials < 1) {
      throw std::invalid_argument("--samples and --trials must be >= 1");
    }
    if (c.budget && *c.budget < 1) throw std::invalid_argument("--budget must be >= 1");
    build_ansatz(c.num_sites, c.particles(), c.ansatz);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

inline int cmd_vqe(const nlohmann::json& cfg, std::ostream& out) {
  const EnergyExperimentConfig c = energy_config_from(cfg);
  const std::string output = detail::get_or<std::string>(cfg, "output", "vqe_result.json");
  const std::string trace = detail::trace_path_for(cfg, output);
  const ExperimentResult r = run_energy_experiment(c);
  detail::write_result(r, output, trace);
  const auto& a = *r.energy;
  char buf[160];
  out << "vqe " << c.model << " L=" << c.num_sites << " N=" << c.particles()
      << " gate=" << to_string(c.ansatz.kind) << (c.ansatz.extended ? " extended" : "")
      << " params=" << r.circuit["free_params"].get<std::size_t>() << " trials=" << c.trials
      << " budget=" << c.evals()
      << (c.shots ? " shots=" + std::to_string(*c.shots) : std::string(" exact")) << "\n";
  std::snprintf(buf, sizeof buf, "E0 (sector N=%d)          %.10f\n", c.particles(), a.ground_energy);
  out << buf;
  std::snprintf(buf, sizeof buf, "mean energy               %.10f\n", a.mean_energy);
  out << buf;
  std::snprintf(buf, sizeof buf, "relative error            %.6e\n", a.relative_error);
  out << buf;
  std::snprintf(buf, sizeof buf, "median relative error     %.6e\n", a.median_relative_error);
  out << buf;
  out << "failed trials             " << r.failures << "\n";
  out << "wrote " << output << " and " << trace << "\n";
  return kExitOk;
}

inline int cmd_fidelity(const nlohmann::json& cfg, std::ostream& out) {
  const FidelityExperimentConfig c = fidelity_config_from(cfg);
  const std::string output = detail::get_or<std::string>(cfg, "output", "fidelity_result.json");
  const std::string trace = detail::trace_path_for(cfg, output);
  const ExperimentResult r = run_fidelity_experiment(c);
  detail::write_result(r, output, trace);
  const auto& a = *r.fidelity;
  char buf[160];
  out << "fidelity L=" << c.num_sites << " N=" << c.particles()
      << " gate=" << to_string(c.ansatz.kind) << (c.ansatz.extended ? " extended" : "")
      << " params=" << r.circuit["free_params"].get<std::size_t>() << " samples=" << c.samples
      << " trials=" << c.trials << " budget=" << c.evals() << "\n";
  std::snprintf(buf, sizeof buf, "mean fidelity             %.10f\n", a.mean_fidelity);
  out << buf;
  std::snprintf(buf, sizeof buf, "mean error (1 - F)        %.6e\n", a.mean_error);
  out << buf;
  out << "failed trials             " << r.failures << "\n";
  out << "wrote " << output << " and " << trace << "\n";
  return kExitOk;
}

/// Full program. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle-conserving circuit toolkit"};
  app.name("pcbrick");
  app.require_subcommand(1);
  app.set_version_flag("--version", "pcbrick 0.1.0");

  const KeySpec seed{"seed", KeyType::kUInt, "master seed"};
  const KeySpec output{"output", KeyType::kString, "output file"};

  CLI::App* gates = app.add_subcommand("gates", "gate construction checks");
  gates->require_subcommand(1);
  CLI::App* verify = gates->add_subcommand("verify", "run the gate and circuit check suite");
  Options verify_opts(verify, {seed, output, {"draws", KeyType::kInt, "random draws per check"}});
  bool inject_fault = false;
  verify->add_flag("--inject-fault", inject_fault)->group("");

  CLI::App* ed = app.add_subcommand("ed", "exact ground energy");
  Options ed_opts(ed, {seed, output,
                       {"model", KeyType::kString, "xxz, xx or nnn"},
                       {"sites", KeyType::kInt, "chain length L"},
                       {"gamma", KeyType::kDouble, "ZZ anisotropy (xxz)"},
                       {"sector", KeyType::kInt, "restrict to N particles"},
                       {"method", KeyType::kString, "auto, dense or lanczos"}});

  auto experiment_keys = [&](std::vector<KeySpec> extra) {
    std::vector<KeySpec> keys = {seed, output, {"trace", KeyType::kString, "CSV trace file (default: output with .csv)"}};
    for (auto& k : detail::ansatz_keys()) keys.push_back(k);
    for (auto& k : detail::optimizer_keys()) keys.push_back(k);
    for (auto& k : extra) keys.push_back(std::move(k));
    return keys;
  };
  CLI::App* vqe = app.add_subcommand("vqe", "variational ground-state search");
  Options vqe_opts(vqe, experiment_keys({{"model", KeyType::kString, "xxz, xx or nnn"},
                                         {"gamma", KeyType::kDouble, "ZZ anisotropy (xxz)"},
                                         {"shots", KeyType::kUInt, "shots per Pauli term (default: exact)"}}));
  CLI::App* fid = app.add_subcommand("fidelity", "learn Haar-random Fock-space states");
  Options fid_opts(fid, experiment_keys({{"samples", KeyType::kInt, "random targets N_S"}}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "pcbrick 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_gates_verify(verify_opts.resolve(), inject_fault, out);
    if (ed->parsed()) return cmd_ed(ed_opts.resolve(), out);
    if (vqe->parsed()) return cmd_vqe(vqe_opts.resolve(), out);
    if (fid->parsed()) return cmd_fidelity(fid_opts.resolve(), out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad configuration value: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace pcbrick::cli
