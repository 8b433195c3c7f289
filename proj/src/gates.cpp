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

#include "shapeholo/gates.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "shapeholo/error.hpp"

namespace shapeholo {

namespace {

constexpr double kSmallLoop = 0.3;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Mat2 power(const Mat2& m, int n) {
  Mat2 out = Mat2::identity();
  for (int i = 0; i < n; ++i) out = m * out;
  return out;
}

Mat2 uz(double eta) { return su2_exp_neg({0.0, 0.0, eta}); }

void require_positive_charge(double q, const char* who) {
  if (!std::isfinite(q) || q <= 0.0) throw ValidationError(std::string(who) + ": charge q must be positive");
}

}  // namespace

Mat2 phase_gate_target() { return Mat2{{std::polar(1.0, -kPi / 4), 0.0, 0.0, std::polar(1.0, kPi / 4)}}; }

Mat2 hadamard_target() { return Mat2{{kInvSqrt2, -kInvSqrt2, kInvSqrt2, kInvSqrt2}}; }

Mat2 canonical_hadamard() { return Mat2{{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}}; }

ShapeLoop make_ellipse_loop(double theta0, double phi0, double a, double b, int n, int orientation) {
  if (!(theta0 > 0.0 && theta0 < kPi) || std::sin(theta0) <= 1e-6)
    throw ValidationError("make_ellipse_loop: center too close to a pole");
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a + b)) throw ValidationError("make_ellipse_loop: need a, b ≥ 0");
  if (orientation != 1 && orientation != -1) throw ValidationError("make_ellipse_loop: orientation must be ±1");
  if (theta0 - a <= 1e-6 || theta0 + a >= kPi - 1e-6) throw ValidationError("make_ellipse_loop: loop reaches a pole");
  const double bs = b / std::sin(theta0);
  const double sign = orientation;
  return ShapeLoop::from_function(
      [=](double s) { return std::pair{theta0 + a * std::cos(sign * s), phi0 + bs * std::sin(sign * s)}; }, n,
      orientation);
}

int default_repetitions(double q) {
  require_positive_charge(q, "default_repetitions");
  if (1.0 / std::sqrt(q) <= kSmallLoop) return 1;
  return static_cast<int>(std::ceil(1.0 / (kSmallLoop * kSmallLoop * q)));
}

GateSpec synth_phase_gate(double q, int repetitions, int orientation, int steps) {
  require_positive_charge(q, "synth_phase_gate");
  const int reps = repetitions > 0 ? repetitions : default_repetitions(q);
  const double a = 1.0 / std::sqrt(q * reps);
  GateSpec g;
  g.repetitions = reps;
  g.loop.q = q;
  g.loop.shape = make_ellipse_loop(kPi / 2, 0.0, a, a, steps, orientation);
  g.target = orientation > 0 ? phase_gate_target() : phase_gate_target().adjoint();
  g.realized = power(integrate_wilson(g.loop).matrix, reps);
  return g;
}

InteractionFrame interaction_frame(const HolonomyLoop& loop) {
  loop.validate();
  if (!loop.bloch.is_pinned()) throw ValidationError("interaction_frame: requires a pinned Bloch field");
  const int n = loop.steps();
  const double h = loop.shape.spacing();
  InteractionFrame f;
  f.transverse.reserve(static_cast<std::size_t>(n));
  f.eta.reserve(static_cast<std::size_t>(n) + 1);
  f.eta.push_back(0.0);
  Mat2 v = Mat2::identity();
  for (int k = 0; k < n; ++k) {
    const Vec3 a = loop.midpoint_vector(k);
    const double eta0 = f.eta.back();
    const double deta = loop.q * a.z * h;
    const Mat2 um = uz(eta0 + 0.5 * deta);
    f.transverse.push_back(su2_to_vector(um.adjoint() * su2_from_vector({a.x, a.y, 0.0}) * um));
    const Mat2 step = su2_exp_neg(a * (loop.q * h));
    v = uz(eta0 + deta).adjoint() * step * uz(eta0) * v;
    f.eta.push_back(eta0 + deta);
  }
  f.abelian = uz(f.eta.back());
  f.v = v;
  return f;
}

GateSpec hadamard_loop(double q, double amplitude, int steps) {
  require_positive_charge(q, "hadamard_loop");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw ValidationError("hadamard_loop: amplitude must be ≥ 0");
  const double a = 1.0 / std::sqrt(q);
  GateSpec g;
  g.loop.q = q;
  g.loop.coupling = TransverseCoupling::Direct;
  g.loop.shape = make_ellipse_loop(kPi / 2, 0.0, a, a, steps);

  // η(s) depends only on the abelian part, so it is taken from the ψ = 0 loop.
  auto eta = std::make_shared<const std::vector<double>>(interaction_frame(g.loop).eta);
  const double h = g.loop.shape.spacing();
  g.loop.control = ControlField::function([eta, h, amplitude](double s) {
    const auto& e = *eta;
    const int last = static_cast<int>(e.size()) - 2;
    const double x = std::clamp(s, 0.0, kTwoPi) / h;
    const int k = std::min(static_cast<int>(x), last);
    const double w = x - k;
    const double value = e[static_cast<std::size_t>(k)] * (1.0 - w) + e[static_cast<std::size_t>(k) + 1] * w;
    return std::polar(amplitude, -kPi / 2 - value);
  });

  const auto frame = interaction_frame(g.loop);
  g.target = hadamard_target();
  g.residual_abelian = frame.abelian;
  g.realized = frame.v;
  g.steering_amplitude = amplitude;
  return g;
}

GateSpec synth_hadamard_gate(double q, int steps) {
  require_positive_charge(q, "synth_hadamard_gate");
  double lo = 0.0, hi = 1.0 / (2.0 * q);
  auto angle = [&](double amp) { return rotation_angle(hadamard_loop(q, amp, steps).realized); };
  if (angle(hi) < kPi / 2) throw NumericalError("synth_hadamard_gate: calibration bracket does not reach π/2");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double err = angle(mid) - kPi / 2;
    if (std::abs(err) < 1e-6) {
      lo = hi = mid;
      break;
    }
    (err < 0.0 ? lo : hi) = mid;
  }
  const double amp = 0.5 * (lo + hi);
  GateSpec g = hadamard_loop(q, amp, steps);
  try {
    (void)dyson_trace(g.loop, 2);
  } catch (const NumericalError&) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "synth_hadamard_gate: steering infeasible, needed |psi| = %.6g", amp);
    throw NumericalError(buf);
  }
  return g;
}

double gate_fidelity(const Mat2& u, const Mat2& v) { return gate_fidelity(CMatrix(u), CMatrix(v)); }

double gate_fidelity(const CMatrix& u, const CMatrix& v) {
  if (u.dim() != v.dim()) throw ValidationError("gate_fidelity: dimension mismatch");
  if (!u.is_unitary(1e-8) || !v.is_unitary(1e-8)) throw ValidationError("gate_fidelity: inputs must be unitary");
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.dim());
}

TwoQubitGate cs_controlled_phase(double q, int k, int lk, int slk) {
  require_positive_charge(q, "cs_controlled_phase");
  if (k < 1) throw ValidationError("cs_controlled_phase: level k must be a positive integer");
  TwoQubitGate g;
  g.k = k;
  const LinkData link = LinkData::pair(lk, slk, slk);
  std::vector<cplx> diag;
  for (int state = 0; state < 4; ++state) {
    const double qa = (state & 2) ? q : 0.0;
    const double qb = (state & 1) ? q : 0.0;
    g.charges[static_cast<std::size_t>(state)] = {qa, qb};
    const double phi = cs_phase({qa, qb}, link, k);
    diag.push_back(std::polar(1.0, phi));
    if (state == 3) g.phase = phi;
  }
  g.matrix = CMatrix::diagonal(diag);
  return g;
}

CMatrix canonical_cnot() {
  CMatrix c(4);
  c(0, 0) = c(1, 1) = 1.0;
  c(2, 3) = c(3, 2) = 1.0;
  return c;
}

TwoQubitGate compile_cnot(double q, int k, CnotPath path, int steps) {
  TwoQubitGate cz = cs_controlled_phase(q, k);
  if (std::abs(cz.phase - kPi) > 1e-9) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "compile_cnot: CS phase %.12g is not pi (need k = 4 q^2)", cz.phase);
    throw ValidationError(buf);
  }
  Mat2 hb;
  if (path == CnotPath::Exact) {
    hb = hadamard_target() * pauli::Z;
  } else {
    const Mat2 v = synth_hadamard_gate(q, steps).realized;
    const Mat2 p = synth_phase_gate(q, 0, +1, steps).realized;
    hb = v * p * p;  // (π/2 gate)² = −iσz
  }
  const CMatrix one = CMatrix::identity(2);
  TwoQubitGate out = cz;
  out.matrix = kron(one, CMatrix(hb)) * cz.matrix * kron(one, CMatrix(hb.adjoint()));
  if (path == CnotPath::Exact && (out.matrix - canonical_cnot()).frobenius() > 1e-12)
    throw NumericalError("compile_cnot: exact path does not reproduce CNOT");
  return out;
}

}  // namespace shapeholo
