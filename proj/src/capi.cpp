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

#include "shapeholo/shapeholo.h"

#include <algorithm>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "shapeholo/demonstrator.hpp"
#include "shapeholo/error.hpp"
#include "shapeholo/gates.hpp"
#include "shapeholo/holonomy.hpp"
#include "shapeholo/linking.hpp"
#include "shapeholo/scenario.hpp"
#include "shapeholo/trimer_dynamics.hpp"

using namespace shapeholo;

struct sh_loop {
  HolonomyLoop loop;
};

struct sh_gate {
  int dim = 2;
  std::vector<cplx> matrix;
  std::vector<cplx> target;
  int repetitions = 0;
  double amplitude = 0.0;
};

struct sh_curve {
  SpaceCurve curve;
};

struct sh_trajectory {
  TrimerTrajectory traj;
  double period = 0.0;
};

struct sh_report {
  std::string scenario;
  std::string out_dir;
  std::vector<std::string> items;
};

namespace {

thread_local std::string g_last_error;

sh_status fail(sh_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
sh_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SH_OK;
  } catch (const ValidationError& e) {
    return fail(SH_ERR_VALIDATION, e.what());
  } catch (const NumericalError& e) {
    return fail(SH_ERR_NUMERICAL, e.what());
  } catch (const IoError& e) {
    return fail(SH_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SH_ERR_INTERNAL, "unknown error");
  }
}

#define SH_REQUIRE(ptr)                                                      \
  do {                                                                       \
    if (!(ptr)) return fail(SH_ERR_INVALID_ARGUMENT, #ptr " must not be NULL"); \
  } while (0)

std::vector<cplx> flatten(const CMatrix& m) {
  std::vector<cplx> out;
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) out.push_back(m(r, c));
  return out;
}

void copy_out(const Mat2& m, sh_complex out[4]) {
  for (std::size_t i = 0; i < 4; ++i) out[i] = {m.m[i].real(), m.m[i].imag()};
}

Mat2 copy_in(const sh_complex w[4]) {
  Mat2 m;
  for (std::size_t i = 0; i < 4; ++i) m.m[i] = {w[i].re, w[i].im};
  return m;
}

BondDrive to_drive(const sh_drive& d) {
  BondDrive b;
  b.d12 = d.d12;
  b.a12 = d.a12;
  b.omega12 = d.omega12;
  b.d = d.d;
  b.a = d.a;
  b.omega = d.omega;
  b.phi13 = d.phi13;
  b.phi23 = d.phi23;
  return b;
}

PlatformParams to_platform(const sh_platform& p) {
  PlatformParams d;
  d.E_A = p.E_A;
  d.E_E1 = p.E_E1;
  d.E_E2 = p.E_E2;
  d.T_loop = p.T_loop;
  d.tau_R = p.tau_R;
  d.R0 = p.R0;
  d.epsilon = p.epsilon;
  d.phi = p.phi;
  d.N_rep = p.N_rep;
  d.q = p.q;
  d.margin = p.margin;
  d.contingency = p.contingency;
  return d;
}

sh_status copy_matrix(const std::vector<cplx>& m, sh_complex* out, size_t capacity) {
  if (capacity < m.size()) return fail(SH_ERR_INVALID_ARGUMENT, "output buffer too small");
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = {m[i].real(), m[i].imag()};
  return SH_OK;
}

sh_gate* single_qubit(const GateSpec& spec) {
  auto* g = new sh_gate;
  g->dim = 2;
  g->matrix.assign(spec.realized.m.begin(), spec.realized.m.end());
  g->target.assign(spec.target.m.begin(), spec.target.m.end());
  g->repetitions = spec.repetitions;
  g->amplitude = spec.steering_amplitude;
  return g;
}

}  // namespace

extern "C" {

const char* sh_version(void) { return library_version(); }

const char* sh_last_error(void) { return g_last_error.c_str(); }

const char* sh_status_name(sh_status status) {
  switch (status) {
    case SH_OK: return "ok";
    case SH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SH_ERR_VALIDATION: return "validation error";
    case SH_ERR_NUMERICAL: return "numerical failure";
    case SH_ERR_IO: return "I/O error";
    case SH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- loops

sh_status sh_loop_ellipse(double theta0, double phi0, double a, double b, int steps, int orientation, double q,
                          sh_loop** out) {
  SH_REQUIRE(out);
  return guard([&] {
    auto l = std::make_unique<sh_loop>();
    l->loop.shape = make_ellipse_loop(theta0, phi0, a, b, steps, orientation);
    l->loop.q = q;
    l->loop.validate();
    *out = l.release();
  });
}

sh_status sh_loop_from_samples(const double* colatitude_azimuth, size_t count, double q, sh_loop** out) {
  SH_REQUIRE(colatitude_azimuth);
  SH_REQUIRE(out);
  return guard([&] {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < count; ++i) pts.emplace_back(colatitude_azimuth[2 * i], colatitude_azimuth[2 * i + 1]);
    auto l = std::make_unique<sh_loop>();
    l->loop.shape = ShapeLoop::from_samples(pts);
    l->loop.q = q;
    l->loop.validate();
    *out = l.release();
  });
}

sh_status sh_loop_set_control(sh_loop* loop, sh_complex psi) {
  SH_REQUIRE(loop);
  return guard([&] { loop->loop.control = ControlField::constant({psi.re, psi.im}); });
}

sh_status sh_loop_set_coupling(sh_loop* loop, int coupling) {
  SH_REQUIRE(loop);
  if (coupling != SH_COUPLING_GEOMETRIC && coupling != SH_COUPLING_DIRECT)
    return fail(SH_ERR_INVALID_ARGUMENT, "unknown coupling");
  loop->loop.coupling = coupling == SH_COUPLING_DIRECT ? TransverseCoupling::Direct : TransverseCoupling::Geometric;
  return SH_OK;
}

sh_status sh_loop_reversed(const sh_loop* loop, sh_loop** out) {
  SH_REQUIRE(loop);
  SH_REQUIRE(out);
  return guard([&] { *out = new sh_loop{loop->loop.reversed()}; });
}

sh_status sh_loop_wilson(const sh_loop* loop, sh_complex out[4]) {
  SH_REQUIRE(loop);
  SH_REQUIRE(out);
  return guard([&] { copy_out(integrate_wilson(loop->loop).matrix, out); });
}

sh_status sh_loop_trace(const sh_loop* loop, double* out) {
  SH_REQUIRE(loop);
  SH_REQUIRE(out);
  return guard([&] { *out = holonomy_trace(loop->loop); });
}

sh_status sh_loop_dyson_trace(const sh_loop* loop, int order, double* out) {
  SH_REQUIRE(loop);
  SH_REQUIRE(out);
  return guard([&] { *out = dyson_trace(loop->loop, order).trace_estimate; });
}

sh_status sh_loop_solid_angle(const sh_loop* loop, double* out) {
  SH_REQUIRE(loop);
  SH_REQUIRE(out);
  return guard([&] { *out = solid_angle(loop->loop.shape, loop->loop.patch); });
}

void sh_loop_free(sh_loop* loop) { delete loop; }

// ---- gates

sh_status sh_gate_phase(double q, int repetitions, int orientation, int steps, sh_gate** out) {
  SH_REQUIRE(out);
  return guard([&] { *out = single_qubit(synth_phase_gate(q, repetitions, orientation, steps)); });
}

sh_status sh_gate_hadamard(double q, int steps, sh_gate** out) {
  SH_REQUIRE(out);
  return guard([&] { *out = single_qubit(synth_hadamard_gate(q, steps)); });
}

sh_status sh_gate_cnot(double q, int k, int path, int steps, sh_gate** out) {
  SH_REQUIRE(out);
  if (path != SH_CNOT_EXACT && path != SH_CNOT_HOLONOMY) return fail(SH_ERR_INVALID_ARGUMENT, "unknown CNOT path");
  return guard([&] {
    const auto gate = compile_cnot(q, k, path == SH_CNOT_EXACT ? CnotPath::Exact : CnotPath::Holonomy, steps);
    auto g = std::make_unique<sh_gate>();
    g->dim = 4;
    g->matrix = flatten(gate.matrix);
    g->target = flatten(canonical_cnot());
    *out = g.release();
  });
}

int sh_gate_dim(const sh_gate* gate) { return gate ? gate->dim : 0; }

sh_status sh_gate_matrix(const sh_gate* gate, sh_complex* out, size_t capacity) {
  SH_REQUIRE(gate);
  SH_REQUIRE(out);
  return copy_matrix(gate->matrix, out, capacity);
}

sh_status sh_gate_target(const sh_gate* gate, sh_complex* out, size_t capacity) {
  SH_REQUIRE(gate);
  SH_REQUIRE(out);
  return copy_matrix(gate->target, out, capacity);
}

sh_status sh_gate_fidelity(const sh_gate* gate, double* out) {
  SH_REQUIRE(gate);
  SH_REQUIRE(out);
  return guard([&] {
    const auto d = static_cast<std::size_t>(gate->dim);
    *out = gate_fidelity(CMatrix(d, gate->matrix), CMatrix(d, gate->target));
  });
}

sh_status sh_gate_info(const sh_gate* gate, int* repetitions, double* steering_amplitude) {
  SH_REQUIRE(gate);
  if (gate->dim != 2) return fail(SH_ERR_INVALID_ARGUMENT, "gate info is defined for single-qubit gates only");
  if (repetitions) *repetitions = gate->repetitions;
  if (steering_amplitude) *steering_amplitude = gate->amplitude;
  return SH_OK;
}

void sh_gate_free(sh_gate* gate) { delete gate; }

sh_status sh_cs_phase(double q, int k, int lk, int slk, double* out) {
  SH_REQUIRE(out);
  return guard([&] { *out = cs_phase({q, q}, LinkData::pair(lk, slk, slk), k); });
}

// ---- curves

sh_status sh_curve_from_points(const double* xyz, size_t count, int closed, sh_curve** out) {
  SH_REQUIRE(xyz);
  SH_REQUIRE(out);
  return guard([&] {
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back({xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]});
    *out = new sh_curve{SpaceCurve::from_points(std::move(pts), closed != 0)};
  });
}

sh_status sh_curve_load_csv(const char* path, sh_curve** out) {
  SH_REQUIRE(path);
  SH_REQUIRE(out);
  return guard([&] { *out = new sh_curve{load_curve_csv(path)}; });
}

sh_status sh_hopf_pair(double r1, double r2, int samples, sh_curve** first, sh_curve** second) {
  SH_REQUIRE(first);
  SH_REQUIRE(second);
  return guard([&] {
    auto p = hopf_pair(r1, r2, samples);
    auto a = std::make_unique<sh_curve>(sh_curve{std::move(p.first)});
    auto b = std::make_unique<sh_curve>(sh_curve{std::move(p.second)});
    *first = a.release();
    *second = b.release();
  });
}

sh_status sh_linking_number(const sh_curve* a, const sh_curve* b, int* lk, double* raw) {
  SH_REQUIRE(a);
  SH_REQUIRE(b);
  return guard([&] {
    const auto r = gauss_linking(a->curve, b->curve);
    if (lk) *lk = r.value;
    if (raw) *raw = r.raw;
  });
}

void sh_curve_free(sh_curve* curve) { delete curve; }

// ---- trimer

void sh_drive_standard(double phi, sh_drive* out) {
  if (!out) return;
  const BondDrive d = BondDrive::standard(phi);
  *out = {d.d12, d.a12, d.omega12, d.d, d.a, d.omega, d.phi13, d.phi23};
}

void sh_standard_masses(double out[3]) {
  if (!out) return;
  std::copy(kStandardMasses.begin(), kStandardMasses.end(), out);
}

sh_status sh_trimer_simulate(const sh_drive* drive, const double masses[3], int periods, int steps_per_period,
                             sh_trajectory** out) {
  SH_REQUIRE(drive);
  SH_REQUIRE(masses);
  SH_REQUIRE(out);
  return guard([&] {
    const BondDrive d = to_drive(*drive);
    d.validate();
    const auto period = d.common_period();
    if (!period) throw ValidationError("trimer: bond frequencies are not commensurate");
    if (periods < 1 || steps_per_period < 1) throw ValidationError("trimer: periods and steps_per_period must be positive");
    auto t = std::make_unique<sh_trajectory>();
    t->period = *period;
    t->traj = reconstruct_rotation(d, {masses[0], masses[1], masses[2]}, *period * periods, *period / steps_per_period);
    *out = t.release();
  });
}

size_t sh_trajectory_size(const sh_trajectory* traj) { return traj ? traj->traj.times.size() : 0; }

sh_status sh_trajectory_period(const sh_trajectory* traj, double* out) {
  SH_REQUIRE(traj);
  SH_REQUIRE(out);
  *out = traj->period;
  return SH_OK;
}

sh_status sh_trajectory_sample(const sh_trajectory* traj, size_t index, double* t, double* theta, double bonds[3]) {
  SH_REQUIRE(traj);
  if (index >= traj->traj.times.size()) return fail(SH_ERR_INVALID_ARGUMENT, "sample index out of range");
  if (t) *t = traj->traj.times[index];
  if (theta) *theta = traj->traj.theta[index];
  if (bonds) {
    const auto& b = traj->traj.bonds[index];
    bonds[0] = b.xi12;
    bonds[1] = b.xi13;
    bonds[2] = b.xi23;
  }
  return SH_OK;
}

sh_status sh_trajectory_fit(const sh_trajectory* traj, double from_fraction, double* slope, double* intercept,
                            double* r2) {
  SH_REQUIRE(traj);
  return guard([&] {
    const auto f = late_time_fit(traj->traj, from_fraction);
    if (slope) *slope = f.slope;
    if (intercept) *intercept = f.intercept;
    if (r2) *r2 = f.r2;
  });
}

sh_status sh_trajectory_max_invariant(const sh_trajectory* traj, double* out) {
  SH_REQUIRE(traj);
  SH_REQUIRE(out);
  *out = traj->traj.max_relative_angular_momentum();
  return SH_OK;
}

sh_status sh_trajectory_effective_L(const sh_trajectory* traj, int stride, double* out, size_t capacity,
                                    size_t* count) {
  SH_REQUIRE(traj);
  SH_REQUIRE(count);
  if (capacity > 0 && !out) return fail(SH_ERR_INVALID_ARGUMENT, "out must not be NULL when capacity > 0");
  return guard([&] {
    const auto series = effective_L_timeseries(traj->traj, traj->period, stride);
    for (std::size_t i = 0; i < std::min(capacity, series.size()); ++i) out[i] = series[i].value;
    *count = series.size();
  });
}

void sh_trajectory_free(sh_trajectory* traj) { delete traj; }

sh_status sh_phase_sweep(const sh_drive* drive, const double masses[3], const double* phi, size_t count, int periods,
                         int steps_per_period, int threads, double* rates) {
  SH_REQUIRE(drive);
  SH_REQUIRE(masses);
  SH_REQUIRE(phi);
  SH_REQUIRE(rates);
  return guard([&] {
    const auto sweep = phase_sweep(to_drive(*drive), {masses[0], masses[1], masses[2]},
                                   std::vector<double>(phi, phi + count), periods, steps_per_period, threads);
    for (std::size_t i = 0; i < sweep.size(); ++i) rates[i] = sweep[i].rate;
  });
}

sh_status sh_berry_phase(double d, double a, double omega, double phi13, double phi23, double* out) {
  SH_REQUIRE(out);
  return guard([&] { *out = precession_berry_phase(d, a, omega, phi13, phi23); });
}

// ---- demonstrator

void sh_platform_defaults(sh_platform* out) {
  if (!out) return;
  const PlatformParams d;
  *out = {d.E_A, d.E_E1, d.E_E2, d.T_loop, d.tau_R, d.R0, d.epsilon, d.phi, d.N_rep, d.q, d.margin, d.contingency};
}

sh_status sh_demo_budget(const sh_platform* params, sh_budget* out) {
  SH_REQUIRE(params);
  SH_REQUIRE(out);
  return guard([&] {
    const PlatformParams p = to_platform(*params);
    const auto w = adiabatic_window(p);
    const auto l = leakage_estimate(p);
    const auto b = gate_budget(p);
    *out = {w.delta_gap, w.delta_E,   w.ratio_lower, w.ratio_upper,   w.pass ? 1 : 0,
            l.per_loop,  l.per_gate, b.t_gate,      b.p_decay,       b.phase_drift, b.total_infidelity_estimate};
  });
}

sh_status sh_drive_solid_angle(const sh_platform* params, int samples, double* solid_angle, double* max_breathing) {
  SH_REQUIRE(params);
  return guard([&] {
    const auto d = drive_to_loop(to_platform(*params), samples);
    if (solid_angle) *solid_angle = d.solid_angle;
    if (max_breathing) *max_breathing = d.max_breathing;
  });
}

sh_status sh_ramsey_echo(const sh_complex w[4], double delta_E, double T_loop, int phase_points, sh_ramsey* out) {
  SH_REQUIRE(w);
  SH_REQUIRE(out);
  return guard([&] {
    const auto r = ramsey_echo(copy_in(w), delta_E, T_loop, phase_points);
    *out = {r.trace_estimate, r.geometric_phase, r.echo_angle, r.control_phase, r.fringe_contrast};
  });
}

// ---- scenarios

sh_status sh_validate_config(const char* path, sh_report** out) {
  SH_REQUIRE(path);
  SH_REQUIRE(out);
  return guard([&] {
    auto r = validate_config(path);
    *out = new sh_report{r.scenario, "", std::move(r.notes)};
  });
}

sh_status sh_run_config(const char* path, const char* out_dir, int threads, int has_seed, uint64_t seed,
                        sh_report** out) {
  SH_REQUIRE(path);
  SH_REQUIRE(out);
  return guard([&] {
    RunOptions o;
    if (out_dir) o.out_dir = out_dir;
    o.threads = threads > 0 ? threads : 0;
    if (has_seed) o.seed = seed;
    auto r = run_config(path, o);
    *out = new sh_report{r.scenario, r.out_dir, std::move(r.files)};
  });
}

const char* sh_report_scenario(const sh_report* report) { return report ? report->scenario.c_str() : ""; }

const char* sh_report_out_dir(const sh_report* report) { return report ? report->out_dir.c_str() : ""; }

size_t sh_report_count(const sh_report* report) { return report ? report->items.size() : 0; }

const char* sh_report_item(const sh_report* report, size_t index) {
  if (!report || index >= report->items.size()) return nullptr;
  return report->items[index].c_str();
}

void sh_report_free(sh_report* report) { delete report; }

}  // extern "C"
