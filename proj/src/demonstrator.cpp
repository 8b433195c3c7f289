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

#include "shapeholo/demonstrator.hpp"

#include <algorithm>
#include <cmath>

#include "shapeholo/error.hpp"

namespace shapeholo {

void PlatformParams::validate() const {
  const double all[] = {E_A, E_E1, E_E2, T_loop, tau_R, R0, epsilon, phi, q, margin, contingency};
  for (double v : all)
    if (!std::isfinite(v) && v != INFINITY) throw ValidationError("PlatformParams: non-finite parameter");
  if (!(E_E1 > 0.0) || !(E_E2 > 0.0) || !(E_A > 0.0)) throw ValidationError("PlatformParams: energies must be positive");
  if (!(T_loop > 0.0) || !(tau_R > 0.0) || !(R0 > 0.0)) throw ValidationError("PlatformParams: T_loop, tau_R, R0 must be positive");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ValidationError("PlatformParams: epsilon must lie in [0, 0.5)");
  if (N_rep < 1) throw ValidationError("PlatformParams: N_rep must be at least 1");
  if (!(q > 0.0)) throw ValidationError("PlatformParams: q must be positive");
  if (!(margin >= 1.0) || !(contingency >= 1.0)) throw ValidationError("PlatformParams: margin and contingency must be ≥ 1");
}

WindowCheck adiabatic_window(const PlatformParams& p) {
  p.validate();
  WindowCheck w;
  w.delta_gap = p.delta_gap();
  w.delta_E = p.delta_E();
  if (!(w.delta_gap > 0.0)) throw ValidationError("adiabatic_window: gap to the A mode must be positive (mode ordering violated)");
  w.ratio_lower = w.delta_E > 0.0 ? (1.0 / p.T_loop) / w.delta_E : INFINITY;
  w.ratio_upper = w.delta_gap * p.T_loop;
  w.pass = w.ratio_lower >= p.margin && w.ratio_upper >= p.margin;
  return w;
}

LeakageEstimate leakage_estimate(const PlatformParams& p) {
  p.validate();
  const double x = p.T_loop * p.delta_gap();
  if (!(x > 0.0)) throw ValidationError("leakage_estimate: gap to the A mode must be positive");
  LeakageEstimate l;
  l.per_loop = 1.0 / (x * x);
  l.per_gate = std::min(1.0, p.N_rep * l.per_loop);
  return l;
}

DriveLoop drive_to_loop(const PlatformParams& p, int samples) {
  p.validate();
  if (samples < 16) throw ValidationError("drive_to_loop: need at least 16 samples");
  const std::array<double, 3> masses{1.0, 1.0, 1.0};
  const double rho0 = to_preshape(to_jacobi(triangle_from_sides(1.0, 1.0, 1.0, masses))).size;
  DriveLoop out;
  if (p.epsilon == 0.0) {
    out.loop = ShapeLoop::point(0.0, 0.0, samples);
    out.apex_compensation.assign(static_cast<std::size_t>(samples) + 1, 0.0);
    return out;
  }

  // Lengths in units of R0; the shape is scale invariant.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 1);
  for (int k = 0; k <= samples; ++k) {
    const double wt = kTwoPi * k / samples;
    const double d1 = p.epsilon * std::cos(wt);
    const double d2 = p.epsilon * std::cos(wt - p.phi);
    const double d3 = -(d1 + d2);
    TriangleConfig c;
    try {
      c = triangle_from_sides(1.0 + d3, 1.0 + d1, 1.0 + d2, masses);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("drive_to_loop: ") + e.what());
    }
    const auto pre = to_preshape(to_jacobi(c));
    out.max_breathing = std::max(out.max_breathing, std::abs(pre.size / rho0 - 1.0));
    const auto s = hopf_project(pre);
    pts.emplace_back(s.colatitude, s.azimuth);
    out.apex_compensation.push_back(d3 * p.R0);
  }
  pts.back() = pts.front();
  out.loop = ShapeLoop::from_samples(pts);
  out.solid_angle = solid_angle(out.loop, GaugePatch::North);
  if (out.max_breathing > 2.0 * p.epsilon * p.epsilon)
    throw NumericalError("drive_to_loop: breathing exceeds the second-order bound");
  return out;
}

ErrorBudget gate_budget(const PlatformParams& p) {
  p.validate();
  ErrorBudget b;
  b.t_gate = p.N_rep * p.T_loop;
  b.p_decay = -std::expm1(-b.t_gate / p.tau_R);
  b.p_leak = leakage_estimate(p).per_gate;
  b.phase_drift = p.delta_E() * b.t_gate;
  b.total_infidelity_estimate = std::min(1.0, p.contingency * (1.0 - (1.0 - b.p_decay) * (1.0 - b.p_leak)));
  return b;
}

namespace {

using Rot = std::array<std::array<double, 3>, 3>;

Mat2 rotation(const Vec3& axis, double angle) { return su2_exp_neg(axis * (-angle)); }

std::array<double, 3> bloch(const std::array<cplx, 2>& s) {
  const cplx c = std::conj(s[0]) * s[1];
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(s[0]) - std::norm(s[1])};
}

std::array<cplx, 2> act(const Mat2& m, const std::array<cplx, 2>& s) {
  return {m.m[0] * s[0] + m.m[1] * s[1], m.m[2] * s[0] + m.m[3] * s[1]};
}

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

struct Readout {
  Vec3 final_bloch;
  std::vector<FringePoint> fringe;
};

// Phase-scanned closing pulse plus a z readout, fitted by a discrete Fourier transform.
Readout read_out(const Mat2& sequence, const Mat2& prep, int points) {
  const std::array<cplx, 2> ground{1.0, 0.0};
  const auto state = act(sequence * prep, ground);
  Readout r;
  double vx = 0.0, vy = 0.0;
  for (int j = 0; j < points; ++j) {
    const double ph = kTwoPi * j / points;
    const auto out = act(rotation({std::cos(ph), std::sin(ph), 0.0}, kPi / 2), state);
    const double p0 = std::norm(out[0]);
    r.fringe.push_back({ph, p0});
    vy += (2.0 * p0 - 1.0) * std::cos(ph);
    vx -= (2.0 * p0 - 1.0) * std::sin(ph);
  }
  const double vz = 2.0 * std::norm(state[0]) - 1.0;
  r.final_bloch = Vec3{vx, vy, 0.0} * (2.0 / points) + Vec3{0.0, 0.0, vz};
  return r;
}

struct Reconstruction {
  Rot m{};
  std::array<std::vector<FringePoint>, 2> fringes;
  double contrast = 0.0;
};

Reconstruction reconstruct(const Mat2& sequence, int points) {
  const std::array<Mat2, 2> preps{rotation({1, 0, 0}, kPi / 2), rotation({0, 1, 0}, kPi / 2)};
  std::array<Vec3, 2> in, out;
  Reconstruction rec;
  rec.contrast = INFINITY;
  for (std::size_t i = 0; i < 2; ++i) {
    in[i] = to_vec(bloch(act(preps[i], {1.0, 0.0})));
    auto r = read_out(sequence, preps[i], points);
    out[i] = r.final_bloch;
    rec.fringes[i] = std::move(r.fringe);
    rec.contrast = std::min(rec.contrast, std::hypot(out[i].x, out[i].y));
  }
  const Vec3 in3 = cross(in[0], in[1]);
  const Vec3 out3 = cross(out[0], out[1]);
  const std::array<Vec3, 3> a{in[0], in[1], in3}, b{out[0], out[1], out3};
  auto comp = [](const Vec3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); };
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += comp(b[k], r) * comp(a[k], c);
      rec.m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = s;
    }
  return rec;
}

}  // namespace

RamseyResult ramsey_echo(const Mat2& w, double delta_E, double T_loop, int phase_points) {
  if ((w.adjoint() * w - Mat2::identity()).frobenius() > 1e-8) throw ValidationError("ramsey_echo: W is not unitary");
  if (!std::isfinite(delta_E) || !(T_loop > 0.0)) throw ValidationError("ramsey_echo: need finite delta_E and T_loop > 0");
  if (phase_points < 8) throw ValidationError("ramsey_echo: need at least 8 phase points");

  const Mat2 d = rotation({0, 0, 1}, delta_E * T_loop);
  const Mat2 x = pauli::X * cplx{0.0, -1.0};
  const Mat2 echo_seq = d * w.adjoint() * x * d * w;

  RamseyResult res;
  auto rec = reconstruct(echo_seq, phase_points);
  res.fringes = std::move(rec.fringes);
  res.fringe_contrast = rec.contrast;
  // Remove the ideal swap: its rotation is diag(1, −1, −1), its own inverse.
  Rot e = rec.m;
  for (auto& row : e) {
    row[1] = -row[1];
    row[2] = -row[2];
  }
  res.echo_rotation = e;
  const double tr = e[0][0] + e[1][1] + e[2][2];
  res.echo_angle = std::acos(std::clamp(0.5 * (tr - 1.0), -1.0, 1.0));
  const double sin_a = std::sin(res.echo_angle);
  double axis_z;
  if (sin_a > 1e-6) {
    axis_z = (e[1][0] - e[0][1]) / (2.0 * sin_a);
  } else {
    axis_z = -1.0;  // at angle 0 or π the sign is not observable; report it positive
  }
  // The echo operator is W⁻², so its axis points opposite to W's.
  res.geometric_phase = 0.5 * res.echo_angle * (axis_z < 0.0 ? 1.0 : -1.0);
  res.trace_estimate = 2.0 * std::cos(0.5 * res.geometric_phase);

  const auto control = reconstruct(d * w, phase_points);
  res.control_phase = std::atan2(control.m[1][0], control.m[0][0]);
  return res;
}

RamseyResult ramsey_echo(const HolonomyLoop& loop, double delta_E, double T_loop, int phase_points) {
  return ramsey_echo(integrate_wilson(loop).matrix, delta_E, T_loop, phase_points);
}

}  // namespace shapeholo
