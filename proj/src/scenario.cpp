// Copyright 2026 The Shapeholo Authors
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

#include "shapeholo/scenario.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "shapeholo/demonstrator.hpp"
#include "shapeholo/error.hpp"
#include "shapeholo/gates.hpp"
#include "shapeholo/holonomy.hpp"
#include "shapeholo/linking.hpp"
#include "shapeholo/trimer_dynamics.hpp"

namespace shapeholo {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char* library_version() { return "1.0.0"; }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// ---------------------------------------------------------------------------
// Parameter access with type checks and unknown-key detection.

class Params {
 public:
  Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ValidationError(where_ + ": expected an object");
  }

  double num(const std::string& key, double def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ValidationError(where_ + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(where_ + "." + key + ": must be finite");
    return x;
  }

  int integer(const std::string& key, int def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ValidationError(where_ + "." + key + ": expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) throw ValidationError(where_ + "." + key + ": expected true or false");
    return v.get<bool>();
  }

  std::string str(const std::string& key, const std::string& def, std::initializer_list<const char*> allowed = {}) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ValidationError(where_ + "." + key + ": expected a string");
    auto s = v.get<std::string>();
    if (allowed.size() == 0) return s;
    for (const char* a : allowed)
      if (s == a) return s;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw ValidationError(where_ + "." + key + ": must be one of " + list);
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> def) {
    used_.insert(key);
    if (!j_.contains(key)) return def;
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ValidationError(where_ + "." + key + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ValidationError(where_ + "." + key + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  Params sub(const std::string& key) {
    used_.insert(key);
    static const json empty = json::object();
    return Params(j_.contains(key) ? j_.at(key) : empty, where_ + "." + key);
  }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) throw ValidationError(where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_matrix(const CMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

json complex_matrix(const Mat2& m) { return complex_matrix(CMatrix(m)); }

struct Output {
  std::string name;
  std::string content;
};

struct Config {
  fs::path path;
  json root;
  std::string scenario;
  std::string output_dir;
  std::uint64_t seed = 0;
  int threads = 1;
  json params;
};

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"gate-synth", "trace-sweep", "trimer-sim", "phase-sweep",
                                              "linking",    "demo-budget", "ramsey"};
  return names;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Config c;
  c.path = fs::absolute(path);
  try {
    c.root = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  Params top(c.root, "config");
  const int version = top.integer("schema_version", -1);
  if (version != kConfigSchemaVersion)
    throw ValidationError("config.schema_version: expected " + std::to_string(kConfigSchemaVersion));
  c.scenario = top.str("scenario", "");
  bool known = false;
  for (const auto& n : scenario_names()) known = known || n == c.scenario;
  if (!known) throw ValidationError("config.scenario: unknown or missing scenario '" + c.scenario + "'");
  c.output_dir = top.str("output_dir", "");
  const int seed = top.integer("seed", 0);
  if (seed < 0) throw ValidationError("config.seed: must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.threads = top.integer("threads", 1);
  if (c.threads < 1) throw ValidationError("config.threads: must be at least 1");
  c.params = c.root.contains("params") ? c.root.at("params") : json::object();
  (void)top.sub("params");
  top.finish();
  return c;
}

// ---------------------------------------------------------------------------
// Scenario parameter blocks. Each parse_* validates fully; run_* computes.

struct GateParams {
  std::string target;
  double q;
  int steps, repetitions, orientation, k;
  std::string path;
};

GateParams parse_gate(const json& j) {
  Params p(j, "params");
  GateParams g;
  g.target = p.str("target", "pi2", {"pi2", "hadamard", "cnot"});
  g.q = p.num("q", 100.0);
  if (!(g.q > 0.0)) throw ValidationError("params.q: must be positive");
  g.steps = p.integer("steps", 4096);
  if (g.steps < 8) throw ValidationError("params.steps: must be at least 8");
  g.repetitions = p.integer("repetitions", 0);
  if (g.repetitions < 0) throw ValidationError("params.repetitions: must be ≥ 0 (0 selects the default)");
  g.orientation = p.integer("orientation", 1);
  if (g.orientation != 1 && g.orientation != -1) throw ValidationError("params.orientation: must be 1 or -1");
  const double kdef = 4.0 * g.q * g.q;
  g.k = p.integer("k", std::abs(kdef - std::round(kdef)) < 1e-9 && kdef < 2e9 ? static_cast<int>(std::round(kdef)) : 0);
  g.path = p.str("path", "exact", {"exact", "holonomy"});
  if (g.target == "cnot" && g.k < 1) throw ValidationError("params.k: CNOT needs a positive integer level k = 4 q^2");
  p.finish();
  return g;
}

std::vector<Output> run_gate(const Config& c, std::vector<std::string>& notes) {
  const GateParams g = parse_gate(c.params);
  json out;
  out["target"] = g.target;
  out["q"] = g.q;
  if (g.target == "cnot") {
    const auto gate = compile_cnot(g.q, g.k, g.path == "exact" ? CnotPath::Exact : CnotPath::Holonomy, g.steps);
    out["dim"] = 4;
    out["k"] = g.k;
    out["path"] = g.path;
    out["cs_phase"] = gate.phase;
    out["matrix"] = complex_matrix(gate.matrix);
    out["target_matrix"] = complex_matrix(canonical_cnot());
    out["fidelity"] = gate_fidelity(gate.matrix, canonical_cnot());
  } else {
    const GateSpec spec = g.target == "pi2" ? synth_phase_gate(g.q, g.repetitions, g.orientation, g.steps)
                                            : synth_hadamard_gate(g.q, g.steps);
    out["dim"] = 2;
    out["repetitions"] = spec.repetitions;
    out["matrix"] = complex_matrix(spec.realized);
    out["target_matrix"] = complex_matrix(spec.target);
    out["residual_abelian"] = complex_matrix(spec.residual_abelian);
    out["rotation_angle"] = rotation_angle(spec.realized);
    out["steering_amplitude"] = spec.steering_amplitude;
    out["fidelity"] = gate_fidelity(spec.realized, spec.target);
  }
  out["gate_error"] = 1.0 - out["fidelity"].get<double>();
  notes.push_back("fidelity " + fmt(out["fidelity"].get<double>()));
  return {{"gate.json", out.dump(2) + "\n"}};
}

HolonomyLoop ellipse_loop(Params& p, double q_default) {
  HolonomyLoop loop;
  loop.q = p.num("q", q_default);
  if (!(loop.q > 0.0)) throw ValidationError("params.q: must be positive");
  const double a = p.num("a", 0.5), b = p.num("b", 0.5);
  const double theta0 = p.num("theta0", kPi / 2), phi0 = p.num("phi0", 0.0);
  const int steps = p.integer("steps", 8192);
  if (steps < 8) throw ValidationError("params.steps: must be at least 8");
  loop.shape = make_ellipse_loop(theta0, phi0, a, b, steps);
  loop.coupling = p.str("coupling", "direct", {"direct", "geometric"}) == "direct" ? TransverseCoupling::Direct
                                                                                   : TransverseCoupling::Geometric;
  return loop;
}

std::vector<Output> run_trace_sweep(const Config& c, std::vector<std::string>& notes) {
  Params p(c.params, "params");
  HolonomyLoop loop = ellipse_loop(p, 2.0);
  const auto psis = p.numbers("psi_values", {0.025, 0.05, 0.1});
  const bool random_phases = p.boolean("random_phases", false);
  p.finish();
  for (double v : psis)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("params.psi_values: entries must be ≥ 0");

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::string csv = "psi_abs,psi_arg,holonomy_trace,dyson2,dyson4,err2,err4\n";
  for (double mag : psis) {
    const double arg = random_phases ? angle(rng) : 0.0;
    loop.control = ControlField::constant(std::polar(mag, arg));
    const double exact = holonomy_trace(loop);
    const auto d2 = dyson_trace(loop, 2);
    const auto d4 = dyson_trace(loop, 4);
    csv += fmt(mag) + "," + fmt(arg) + "," + fmt(exact) + "," + fmt(d2.trace_estimate) + "," + fmt(d4.trace_estimate) +
           "," + fmt(std::abs(d2.trace_estimate - exact)) + "," + fmt(std::abs(d4.trace_estimate - exact)) + "\n";
  }
  notes.push_back(std::to_string(psis.size()) + " amplitudes");
  return {{"trace_sweep.csv", csv}};
}

BondDrive parse_drive(Params p) {
  BondDrive d = BondDrive::standard();
  d.d12 = p.num("d12", d.d12);
  d.a12 = p.num("a12", d.a12);
  d.omega12 = p.num("omega12", d.omega12);
  d.d = p.num("d", d.d);
  d.a = p.num("a", d.a);
  d.omega = p.num("omega", d.omega);
  d.phi13 = p.num("phi13", d.phi13);
  d.phi23 = p.num("phi23", d.phi23);
  p.finish();
  d.validate();
  return d;
}

std::array<double, 3> parse_masses(Params& p) {
  const auto m = p.numbers("masses", {kStandardMasses[0], kStandardMasses[1], kStandardMasses[2]});
  if (m.size() != 3) throw ValidationError("params.masses: expected three masses");
  for (double x : m)
    if (!(x > 0.0)) throw ValidationError("params.masses: masses must be positive");
  return {m[0], m[1], m[2]};
}

// Worst-case triangle inequality over the bond extremes actually reached.
void check_drive_triangle(const BondDrive& d, const std::array<double, 3>& masses) {
  const int n = 4096;
  const double span = d.common_period().value_or(kTwoPi / std::min(d.omega, d.omega12) * 16.0);
  for (int k = 0; k <= n; ++k) {
    const double t = span * k / n;
    try {
      (void)shape_from_bonds(bond_lengths(t, d), masses);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("drive violates the triangle inequality: ") + e.what() + " at t = " + fmt(t));
    }
  }
}

struct TrimerParams {
  BondDrive drive;
  std::array<double, 3> masses;
  int periods, steps_per_period;
};

TrimerParams parse_trimer(const json& j) {
  Params p(j, "params");
  TrimerParams t;
  t.drive = parse_drive(p.sub("drive"));
  t.masses = parse_masses(p);
  t.periods = p.integer("periods", 64);
  t.steps_per_period = p.integer("steps_per_period", 512);
  p.finish();
  if (t.periods < 1) throw ValidationError("params.periods: must be at least 1");
  if (!t.drive.common_period()) throw ValidationError("params.drive: frequencies must be commensurate");
  const double fastest_steps = t.steps_per_period * std::min(t.drive.omega, t.drive.omega12) /
                               std::max(t.drive.omega, t.drive.omega12) / (*t.drive.common_period() * std::min(t.drive.omega, t.drive.omega12) / kTwoPi);
  if (fastest_steps < 64.0) throw ValidationError("params.steps_per_period: need at least 64 steps per fastest period");
  check_drive_triangle(t.drive, t.masses);
  return t;
}

std::vector<Output> run_trimer(const Config& c, std::vector<std::string>& notes) {
  const TrimerParams t = parse_trimer(c.params);
  const double period = *t.drive.common_period();
  const auto traj = reconstruct_rotation(t.drive, t.masses, period * t.periods, period / t.steps_per_period);
  const int stride = std::max(1, t.steps_per_period / 32);
  const auto leff = effective_L_timeseries(traj, period, stride);

  std::string csv = "t,xi12,xi13,xi23,theta,L_eff\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const std::size_t j = std::min(k / static_cast<std::size_t>(stride), leff.size() - 1);
    const auto& b = traj.bonds[k];
    csv += fmt(traj.times[k]) + "," + fmt(b.xi12) + "," + fmt(b.xi13) + "," + fmt(b.xi23) + "," + fmt(traj.theta[k]) +
           "," + fmt(leff[j].value) + "\n";
  }

  const auto fit = late_time_fit(traj, 0.5);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t j = leff.size() * 3 / 4; j < leff.size(); ++j) {
    lo = std::min(lo, leff[j].value);
    hi = std::max(hi, leff[j].value);
  }
  json s;
  s["period"] = period;
  s["mean_rate"] = traj.theta.back() / traj.times.back();
  s["late_fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
  s["L_eff_final"] = leff.back().value;
  s["L_eff_relative_spread_last_quarter"] = hi > 0.0 ? (hi - lo) / hi : 0.0;
  s["max_relative_angular_momentum"] = traj.max_relative_angular_momentum();
  notes.push_back("late-time R^2 " + fmt(fit.r2));
  return {{"trimer.csv", csv}, {"trimer_summary.json", s.dump(2) + "\n"}};
}

std::vector<Output> run_phase_sweep(const Config& c, std::vector<std::string>& notes) {
  Params p(c.params, "params");
  const BondDrive drive = parse_drive(p.sub("drive"));
  const auto masses = parse_masses(p);
  const int points = p.integer("grid_points", 33);
  const int periods = p.integer("periods", 4);
  const int spp = p.integer("steps_per_period", 1024);
  p.finish();
  if (points < 3) throw ValidationError("params.grid_points: need at least 3");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(-kPi + kTwoPi * i / (points - 1));
  for (double phi : grid) {
    BondDrive d = drive;
    d.phi13 = 0.5 * phi;
    d.phi23 = -0.5 * phi;
    check_drive_triangle(d, masses);
  }
  const auto sweep = phase_sweep(drive, masses, grid, periods, spp, c.threads);
  std::string csv = "phi,phi13,rate\n";
  for (const auto& s : sweep) csv += fmt(s.phi) + "," + fmt(0.5 * s.phi) + "," + fmt(s.rate) + "\n";
  notes.push_back(std::to_string(sweep.size()) + " grid points");
  return {{"phase_sweep.csv", csv}};
}

std::vector<Output> run_linking(const Config& c, std::vector<std::string>& notes) {
  Params p(c.params, "params");
  const double q = p.num("q", 1.0);
  if (!(q > 0.0)) throw ValidationError("params.q: must be positive");
  const double kdef = 4.0 * q * q;
  const int k = p.integer("k", std::abs(kdef - std::round(kdef)) < 1e-9 ? static_cast<int>(std::round(kdef)) : 0);
  if (k < 1) throw ValidationError("params.k: must be a positive integer");
  const int slk = p.integer("slk", 0);
  std::pair<SpaceCurve, SpaceCurve> curves = hopf_pair();
  if (p.has("curves")) {
    const auto& list = p.raw("curves");
    if (!list.is_array() || list.size() != 2 || !list[0].is_string() || !list[1].is_string())
      throw ValidationError("params.curves: expected two CSV file names");
    auto resolve = [&](const std::string& f) {
      fs::path fp(f);
      if (fp.is_relative()) fp = c.path.parent_path() / fp;
      if (!fs::exists(fp)) throw ValidationError("params.curves: file not found: " + fp.string());
      return load_curve_csv(fp.string());
    };
    curves = {resolve(list[0].get<std::string>()), resolve(list[1].get<std::string>())};
    (void)p.sub("hopf");
  } else {
    Params h = p.sub("hopf");
    const double r1 = h.num("r1", 1.0), r2 = h.num("r2", 1.0);
    const int samples = h.integer("samples", 512);
    h.finish();
    curves = hopf_pair(r1, r2, samples);
  }
  p.finish();
  const auto lk = gauss_linking(curves.first, curves.second);
  const double phase = cs_phase({q, q}, LinkData::pair(lk.value, slk, slk), k);
  json out;
  out["linking_number"] = lk.value;
  out["gauss_integral"] = lk.raw;
  out["q"] = q;
  out["k"] = k;
  out["slk"] = slk;
  out["cs_phase"] = phase;
  out["controlled_z"] = std::abs(phase - kPi) < 1e-9;
  notes.push_back("Lk = " + std::to_string(lk.value));
  return {{"linking.json", out.dump(2) + "\n"}};
}

PlatformParams parse_platform(Params& p) {
  PlatformParams d;
  d.E_A = p.num("E_A", d.E_A);
  d.E_E1 = p.num("E_E1", d.E_E1);
  d.E_E2 = p.num("E_E2", d.E_E2);
  d.T_loop = p.num("T_loop", d.T_loop);
  d.tau_R = p.num("tau_R", d.tau_R);
  d.R0 = p.num("R0", d.R0);
  d.epsilon = p.num("epsilon", d.epsilon);
  d.phi = p.num("phi", d.phi);
  d.N_rep = p.integer("N_rep", d.N_rep);
  d.q = p.num("q", d.q);
  d.margin = p.num("margin", d.margin);
  d.contingency = p.num("contingency", d.contingency);
  d.validate();
  return d;
}

WindowCheck require_window(const PlatformParams& d) {
  const auto w = adiabatic_window(d);
  if (!w.pass) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "adiabatic window violated: need delta_E << 1/T_loop << Delta_gap with factor >= %g on each side "
                  "(got (1/T_loop)/delta_E = %.4g, Delta_gap*T_loop = %.4g)",
                  d.margin, w.ratio_lower, w.ratio_upper);
    std::string msg = buf;
    if (w.delta_E >= w.delta_gap) msg += "; delta_E exceeds Delta_gap, so the doublet splitting is not small against the gap";
    throw ValidationError(msg);
  }
  return w;
}

std::vector<Output> run_demo_budget(const Config& c, std::vector<std::string>& notes) {
  Params p(c.params, "params");
  const PlatformParams d = parse_platform(p);
  const int samples = p.integer("drive_samples", 1024);
  p.finish();
  const auto w = require_window(d);
  const auto leak = leakage_estimate(d);
  const auto budget = gate_budget(d);
  const auto drive = drive_to_loop(d, samples);
  json out;
  out["window"] = {{"delta_gap", w.delta_gap},
                   {"delta_E", w.delta_E},
                   {"ratio_lower", w.ratio_lower},
                   {"ratio_upper", w.ratio_upper},
                   {"margin", d.margin},
                   {"pass", w.pass}};
  out["leakage"] = {{"per_loop", leak.per_loop}, {"per_gate", leak.per_gate}};
  out["budget"] = {{"t_gate", budget.t_gate},
                   {"p_decay", budget.p_decay},
                   {"p_leak", budget.p_leak},
                   {"phase_drift", budget.phase_drift},
                   {"contingency", d.contingency},
                   {"total_infidelity_estimate", budget.total_infidelity_estimate}};
  out["drive"] = {{"solid_angle", drive.solid_angle}, {"max_breathing", drive.max_breathing}};
  std::string csv = "s,colatitude,azimuth,apex_compensation\n";
  const auto& nodes = drive.loop.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    csv += fmt(drive.loop.spacing() * static_cast<double>(k)) + "," + fmt(nodes[k].colatitude) + "," +
           fmt(nodes[k].azimuth) + "," + fmt(drive.apex_compensation[k]) + "\n";
  notes.push_back("window ratios " + fmt(w.ratio_lower) + ", " + fmt(w.ratio_upper));
  return {{"budget.json", out.dump(2) + "\n"}, {"drive_loop.csv", csv}};
}

std::vector<Output> run_ramsey(const Config& c, std::vector<std::string>& notes) {
  Params p(c.params, "params");
  const double q = p.num("q", 1000.0);
  const double delta_E = p.num("delta_E", 0.3);
  const double T_loop = p.num("T_loop", 1.0);
  const int points = p.integer("phase_points", 64);
  const int steps = p.integer("steps", 4096);
  const int orientation = p.integer("orientation", 1);
  p.finish();
  if (!(q > 0.0) || !(T_loop > 0.0)) throw ValidationError("params: q and T_loop must be positive");
  if (points < 8) throw ValidationError("params.phase_points: need at least 8");
  if (steps < 8) throw ValidationError("params.steps: must be at least 8");
  if (orientation != 1 && orientation != -1) throw ValidationError("params.orientation: must be 1 or -1");

  const GateSpec gate = synth_phase_gate(q, 0, orientation, steps);
  const auto r = ramsey_echo(gate.realized, delta_E, T_loop, points);
  json out;
  out["q"] = q;
  out["delta_E"] = delta_E;
  out["T_loop"] = T_loop;
  out["trace_estimate"] = r.trace_estimate;
  out["trace_exact"] = gate.realized.trace().real();
  out["geometric_phase"] = r.geometric_phase;
  out["echo_angle"] = r.echo_angle;
  out["control_phase"] = r.control_phase;
  out["fringe_contrast"] = r.fringe_contrast;
  std::string csv = "preparation,phase,p0\n";
  const char* names[] = {"x", "y"};
  for (std::size_t i = 0; i < 2; ++i)
    for (const auto& f : r.fringes[i]) csv += std::string(names[i]) + "," + fmt(f.phase) + "," + fmt(f.p0) + "\n";
  notes.push_back("trace estimate " + fmt(r.trace_estimate));
  return {{"ramsey.json", out.dump(2) + "\n"}, {"fringe.csv", csv}};
}

// Parse-only checks for `validate` (no heavy computation).
void check_params(const Config& c, std::vector<std::string>& notes) {
  const auto& s = c.scenario;
  if (s == "gate-synth") {
    const auto g = parse_gate(c.params);
    if (g.target == "cnot") {
      const auto cz = cs_controlled_phase(g.q, g.k);
      if (std::abs(cz.phase - kPi) > 1e-9) throw ValidationError("params.k: CS phase is not pi; need k = 4 q^2");
    }
    notes.push_back("gate parameters ok");
  } else if (s == "trace-sweep") {
    Params p(c.params, "params");
    (void)ellipse_loop(p, 2.0);
    (void)p.numbers("psi_values", {});
    (void)p.boolean("random_phases", false);
    p.finish();
    notes.push_back("loop parameters ok");
  } else if (s == "trimer-sim") {
    (void)parse_trimer(c.params);
    notes.push_back("triangle inequality holds over one period");
  } else if (s == "phase-sweep") {
    Params p(c.params, "params");
    const auto drive = parse_drive(p.sub("drive"));
    const auto masses = parse_masses(p);
    (void)p.integer("grid_points", 33);
    (void)p.integer("periods", 4);
    (void)p.integer("steps_per_period", 1024);
    p.finish();
    if (!drive.common_period()) throw ValidationError("params.drive: frequencies must be commensurate");
    check_drive_triangle(drive, masses);
    notes.push_back("drive ok");
  } else if (s == "linking") {
    Params p(c.params, "params");
    (void)p.num("q", 1.0);
    (void)p.integer("k", 4);
    (void)p.integer("slk", 0);
    if (p.has("curves")) {
      const auto& list = p.raw("curves");
      if (!list.is_array() || list.size() != 2) throw ValidationError("params.curves: expected two CSV file names");
      for (const auto& f : list) {
        if (!f.is_string()) throw ValidationError("params.curves: expected two CSV file names");
        fs::path fp(f.get<std::string>());
        if (fp.is_relative()) fp = c.path.parent_path() / fp;
        if (!fs::exists(fp)) throw ValidationError("params.curves: file not found: " + fp.string());
      }
    }
    (void)p.sub("hopf");
    p.finish();
    notes.push_back("curves ok");
  } else if (s == "demo-budget") {
    Params p(c.params, "params");
    const auto d = parse_platform(p);
    (void)p.integer("drive_samples", 1024);
    p.finish();
    const auto w = require_window(d);
    notes.push_back("pass: window ratios " + fmt(w.ratio_lower) + " and " + fmt(w.ratio_upper));
  } else if (s == "ramsey") {
    Params p(c.params, "params");
    for (const char* k : {"q", "delta_E", "T_loop"}) (void)p.num(k, 1.0);
    for (const char* k : {"phase_points", "steps", "orientation"}) (void)p.integer(k, 8);
    p.finish();
    notes.push_back("ramsey parameters ok");
  }
}

std::vector<Output> dispatch(const Config& c, std::vector<std::string>& notes) {
  const auto& s = c.scenario;
  if (s == "gate-synth") return run_gate(c, notes);
  if (s == "trace-sweep") return run_trace_sweep(c, notes);
  if (s == "trimer-sim") return run_trimer(c, notes);
  if (s == "phase-sweep") return run_phase_sweep(c, notes);
  if (s == "linking") return run_linking(c, notes);
  if (s == "demo-budget") return run_demo_budget(c, notes);
  return run_ramsey(c, notes);
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out << content;
  out.close();
  if (!out) throw IoError("write failed for " + p.string());
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

ValidationReport validate_config(const std::string& path) {
  const Config c = load_config(path);
  ValidationReport r;
  r.scenario = c.scenario;
  check_params(c, r.notes);
  return r;
}

RunResult run_config(const std::string& path, const RunOptions& options) {
  Config c = load_config(path);
  if (options.threads > 0) c.threads = options.threads;
  if (options.seed) c.seed = *options.seed;
  std::string out_dir = options.out_dir;
  if (out_dir.empty()) out_dir = c.output_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv("SHAPEHOLO_OUT_DIR");
    out_dir = env && *env ? env : "shapeholo_out";
  }

  std::vector<std::string> notes;
  check_params(c, notes);
  const auto t0 = std::chrono::steady_clock::now();
  auto outputs = dispatch(c, notes);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json manifest;
  manifest["artifact"] = "shapeholo";
  manifest["version"] = library_version();
  manifest["schema_version"] = kConfigSchemaVersion;
  manifest["scenario"] = c.scenario;
  manifest["config"] = c.root;
  manifest["seed"] = c.seed;
  manifest["threads"] = c.threads;
  manifest["outputs"] = json::array();
  for (const auto& o : outputs)
    manifest["outputs"].push_back({{"file", o.name}, {"bytes", o.content.size()}, {"fnv1a64", hex64(fnv1a64(o.content))}});
  manifest["timings"] = {{"compute_seconds", seconds}};
  outputs.push_back({"manifest.json", manifest.dump(2) + "\n"});

  const fs::path dir = fs::absolute(out_dir);
  const fs::path staging = dir / (".staging-" + std::to_string(::getpid()));
  std::error_code ec;
  try {
    fs::create_directories(dir);
    fs::remove_all(staging, ec);
    fs::create_directories(staging);
    for (const auto& o : outputs) write_file(staging / o.name, o.content);
    for (const auto& o : outputs) fs::rename(staging / o.name, dir / o.name);
    fs::remove(staging);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(staging, ec);
    throw IoError(e.what());
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }

  RunResult r;
  r.scenario = c.scenario;
  r.out_dir = dir.string();
  for (const auto& o : outputs) r.files.push_back(o.name);
  return r;
}

}  // namespace shapeholo
