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

#include "shapeholo/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "shapeholo/error.hpp"

namespace shapeholo {

void WilsonLine::validate(double tol) const {
  const double unit = (matrix.adjoint() * matrix - Mat2::identity()).frobenius();
  const double det = std::abs(matrix.det() - 1.0);
  if (!(unit < tol) || !(det < tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "Wilson line left SU(2): |U†U − 1| = %.3e, |det U − 1| = %.3e", unit, det);
    throw NumericalError(buf);
  }
}

void HolonomyLoop::validate() const {
  if (!std::isfinite(q) || q <= 0.0) throw ValidationError("HolonomyLoop: charge q must be positive and finite");
  if (steps() < 8) throw ValidationError("HolonomyLoop: need at least 8 steps");
  check_patch(shape, patch);
}

HolonomyLoop HolonomyLoop::reversed() const {
  HolonomyLoop r = *this;
  r.shape = shape.reversed();
  // Direct coupling is per unit parameter, so it changes sign with ds.
  r.control = control.reversed(coupling == TransverseCoupling::Direct ? -1.0 : 1.0);
  if (abelian_offset) {
    auto f = abelian_offset;
    r.abelian_offset = [f](double s) { return -f(kTwoPi - s); };
  }
  return r;
}

Vec3 HolonomyLoop::midpoint_vector(int k) const {
  const double s = (k + 0.5) * shape.spacing();
  const auto m = shape.midpoint(k);
  ConnectionOptions opts;
  opts.coupling = coupling;
  opts.patch = patch;
  opts.abelian_offset = abelian_offset ? abelian_offset(s) : 0.0;
  return connection_vector(m.colatitude, m.azimuth, shape.tangent(k), bloch, control(s), opts);
}

WilsonLine integrate_wilson(const HolonomyLoop& loop) {
  loop.validate();
  const double h = loop.shape.spacing();
  Mat2 w = Mat2::identity();
  for (int k = 0; k < loop.steps(); ++k) w = su2_exp_neg(loop.midpoint_vector(k) * (loop.q * h)) * w;
  WilsonLine out{w, loop.q};
  out.validate();
  return out;
}

double holonomy_trace(const HolonomyLoop& loop) {
  const cplx t = integrate_wilson(loop).matrix.trace();
  if (std::abs(t.imag()) >= 1e-8) throw NumericalError("holonomy_trace: trace has an imaginary part");
  return t.real();
}

namespace {

// Generator of the transport in the north-regular Bloch frame R_N = R(λ, μ) e^{iλσz/2},
// returned as the coefficient vector g with Ĝ = g·σ/2i.
Vec3 frame_generator(const HolonomyLoop& loop, int k) {
  const Vec3 v = loop.midpoint_vector(k);
  if (loop.bloch.is_pinned()) return v * loop.q;
  const auto m = loop.shape.midpoint(k);
  const auto g = loop.bloch.evaluate(m.colatitude, m.azimuth, loop.shape.tangent(k));
  const cplx i{0.0, 1.0};
  const Mat2 rz{{std::exp(-0.5 * i * g.lambda), 0.0, 0.0, std::exp(0.5 * i * g.lambda)}};
  const double c = std::cos(0.5 * g.mu), s = std::sin(0.5 * g.mu);
  const Mat2 ry{{c, -s, s, c}};
  const Mat2 qz = rz.adjoint();
  const Mat2 rn = rz * ry * qz;
  const Mat2 drz = pauli::Z * rz * (-0.5 * i * g.dlambda);
  const Mat2 dry = pauli::Y * ry * (-0.5 * i * g.dmu);
  const Mat2 dqz = pauli::Z * qz * (0.5 * i * g.dlambda);
  const Mat2 drn = drz * ry * qz + rz * dry * qz + rz * ry * dqz;
  const Mat2 gen = rn.adjoint() * su2_from_vector(v) * rn * loop.q + rn.adjoint() * drn;
  return su2_to_vector(gen);
}

}  // namespace

TraceExpansion dyson_trace(const HolonomyLoop& loop, int order) {
  if (order != 2 && order != 4) throw ValidationError("dyson_trace: order must be 2 or 4");
  loop.validate();
  const int n = loop.steps();
  const double h = loop.shape.spacing();
  const cplx inv2i{0.0, -0.5};

  std::vector<cplx> k12(static_cast<std::size_t>(n)), k21(static_cast<std::size_t>(n));
  double phase = 0.0;
  for (int m = 0; m < n; ++m) {
    const Vec3 g = frame_generator(loop, m);
    const double dm = phase + 0.5 * g.z * h;
    const cplx j{g.x, -g.y};
    k12[static_cast<std::size_t>(m)] = std::polar(1.0, -dm) * j * inv2i;
    k21[static_cast<std::size_t>(m)] = std::polar(1.0, dm) * std::conj(j) * inv2i;
    phase += g.z * h;
  }

  // Nested cumulative midpoint quadrature of ∫k12(t1)∫^{t1} k21(t2) f(t2).
  auto nested = [&](const std::vector<cplx>* f, std::vector<cplx>* cumulative) {
    cplx inner{}, outer{};
    for (std::size_t m = 0; m < k12.size(); ++m) {
      const cplx term = k21[m] * (f ? (*f)[m] : cplx{1.0});
      const cplx at = inner + 0.5 * h * term;
      const cplx contrib = k12[m] * at * h;
      if (cumulative) (*cumulative)[m] = outer + 0.5 * contrib;
      outer += contrib;
      inner += term * h;
    }
    return outer;
  };

  TraceExpansion out;
  out.abelian_angle = 0.5 * phase;
  std::vector<cplx> a2_running(k12.size());
  const cplx a2 = nested(nullptr, &a2_running);
  if (!(std::abs(a2) < 0.5)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "dyson_trace: iteration does not contract, |I2| = %.4g", std::abs(a2));
    throw NumericalError(buf);
  }
  cplx total = 1.0 + a2;
  out.corrections.push_back(-a2);
  if (order == 4) {
    const cplx a4 = nested(&a2_running, nullptr);
    out.corrections.push_back(a4);
    total += a4;
  }
  out.trace_estimate = 2.0 * (std::polar(1.0, out.abelian_angle) * total).real();
  return out;
}

double rotation_angle(const Mat2& w) {
  const double half = 0.5 * w.trace().real();
  if (std::abs(half) > 1.0 + 1e-10) throw NumericalError("rotation_angle: |Tr W| exceeds 2");
  return 2.0 * std::acos(std::clamp(half, -1.0, 1.0));
}

double rotation_angle(const WilsonLine& w) {
  w.validate();
  return rotation_angle(w.matrix);
}

double effective_angular_momentum(std::span<const TriangleConfig> trajectory, double loop_trace, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw ValidationError("effective_angular_momentum: zero-duration period");
  if (trajectory.size() < 2) throw ValidationError("effective_angular_momentum: need at least two samples");
  if (std::abs(loop_trace) > 2.0 + 1e-10) throw ValidationError("effective_angular_momentum: |trace| exceeds 2");

  // Trapezoid weights over uniformly spaced samples.
  const std::size_t n = trajectory.size();
  auto weight = [n](std::size_t k) { return (k == 0 || k + 1 == n) ? 0.5 : 1.0; };
  const double wsum = static_cast<double>(n) - 1.0;

  Vec3 axis{};
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = trajectory[k].vertices;
    Vec3 nrm = cross(v[1] - v[0], v[2] - v[0]);
    const double len = norm(nrm);
    if (len > 0.0) axis += nrm * (weight(k) / len);
  }
  if (norm(axis) == 0.0) throw ValidationError("effective_angular_momentum: degenerate trajectory");
  axis = axis / norm(axis);

  double inertia = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& c = trajectory[k];
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Vec3& r = c.vertices[static_cast<std::size_t>(i)];
      const double along = dot(r, axis);
      sum += c.masses[static_cast<std::size_t>(i)] * (dot(r, r) - along * along);
    }
    inertia += weight(k) * sum;
  }
  inertia /= wsum;
  return 2.0 * (inertia / period) * std::acos(std::clamp(0.5 * loop_trace, -1.0, 1.0));
}

HolonomyLoop gauge_rotate(const HolonomyLoop& loop, std::function<double(double)> alpha,
                          std::function<double(double)> dalpha) {
  if (!alpha || !dalpha) throw ValidationError("gauge_rotate: empty gauge function");
  HolonomyLoop out = loop;
  out.control = loop.control.rotated(alpha);
  const double sign = loop.coupling == TransverseCoupling::Direct ? -1.0 : 1.0;
  const double q = loop.q;
  auto old = loop.abelian_offset;
  out.abelian_offset = [old, dalpha = std::move(dalpha), sign, q](double s) {
    return (old ? old(s) : 0.0) + sign * dalpha(s) / q;
  };
  return out;
}

}  // namespace shapeholo
