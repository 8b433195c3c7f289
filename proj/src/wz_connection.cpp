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

#include "shapeholo/wz_connection.hpp"

#include <algorithm>
#include <cmath>

#include "shapeholo/error.hpp"

namespace shapeholo {

namespace {

constexpr double kFieldStep = 1e-5;     // central differences of λ, μ
constexpr double kCurvatureStep = 1e-4; // central differences of 𝒜 components
constexpr double kPoleTol = 1e-6;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ---------------------------------------------------------------------------
// BlochField

BlochField BlochField::pinned() { return BlochField{}; }

BlochField BlochField::analytic(AngleFn lambda, AngleFn mu) {
  if (!lambda || !mu) throw ValidationError("BlochField: analytic field needs both angle functions");
  BlochField f;
  f.lambda_ = std::move(lambda);
  f.mu_ = std::move(mu);
  return f;
}

BlochField BlochField::radial() {
  return analytic([](double, double ph) { return ph; }, [](double th, double) { return th; });
}

BlochField::Geometry BlochField::evaluate(double th, double ph, Tangent tangent) const {
  Geometry g;
  if (is_pinned()) {
    g.n = {0.0, 0.0, 1.0};
    g.e1 = {1.0, 0.0, 0.0};
    g.e2 = {0.0, 1.0, 0.0};
    return g;
  }
  const double h = kFieldStep;
  const double lam = lambda_(th, ph);
  const double mu = mu_(th, ph);
  const double lam_t = (lambda_(th + h, ph) - lambda_(th - h, ph)) / (2.0 * h);
  const double lam_p = (lambda_(th, ph + h) - lambda_(th, ph - h)) / (2.0 * h);
  const double mu_t = (mu_(th + h, ph) - mu_(th - h, ph)) / (2.0 * h);
  const double mu_p = (mu_(th, ph + h) - mu_(th, ph - h)) / (2.0 * h);
  if (!std::isfinite(lam) || !std::isfinite(mu) || !std::isfinite(lam_t + lam_p + mu_t + mu_p))
    throw ValidationError("BlochField: non-finite field value");

  const double cl = std::cos(lam), sl = std::sin(lam), cm = std::cos(mu), sm = std::sin(mu);
  g.lambda = lam;
  g.mu = mu;
  g.n = {cl * sm, sl * sm, cm};
  g.e1 = {cl * cm, sl * cm, -sm};
  g.e2 = {-sl, cl, 0.0};
  g.dlambda = lam_t * tangent.first + lam_p * tangent.second;
  g.dmu = mu_t * tangent.first + mu_p * tangent.second;
  g.dn = g.e1 * g.dmu + g.e2 * (sm * g.dlambda);
  return g;
}

// ---------------------------------------------------------------------------
// ControlField

ControlField ControlField::zero() { return constant(0.0); }

ControlField ControlField::constant(cplx value) {
  if (!finite(value)) throw ValidationError("ControlField: non-finite value");
  return function([value](double) { return value; });
}

ControlField ControlField::function(std::function<cplx(double)> f) {
  if (!f) throw ValidationError("ControlField: empty function");
  ControlField c;
  c.f_ = std::make_shared<const std::function<cplx(double)>>(std::move(f));
  return c;
}

ControlField ControlField::sampled(std::vector<cplx> nodes) {
  if (nodes.size() < 2) throw ValidationError("ControlField: need at least two nodes");
  for (const auto& v : nodes)
    if (!finite(v)) throw ValidationError("ControlField: non-finite node value");
  auto data = std::make_shared<const std::vector<cplx>>(std::move(nodes));
  return function([data](double s) {
    const auto& v = *data;
    const int n = static_cast<int>(v.size()) - 1;
    const double x = std::clamp(s, 0.0, kTwoPi) / kTwoPi * n;
    const int k = std::min(static_cast<int>(x), n - 1);
    const double w = x - k;
    return v[static_cast<std::size_t>(k)] * (1.0 - w) + v[static_cast<std::size_t>(k) + 1] * w;
  });
}

cplx ControlField::operator()(double s) const { return (*f_)(s); }

bool ControlField::periodic(double tol) const { return std::abs((*this)(0.0) - (*this)(kTwoPi)) < tol; }

ControlField ControlField::reversed(cplx factor) const {
  auto f = f_;
  return function([f, factor](double s) { return (*f)(kTwoPi - s) * factor; });
}

ControlField ControlField::rotated(std::function<double(double)> alpha) const {
  auto f = f_;
  return function([f, alpha = std::move(alpha)](double s) { return std::polar(1.0, alpha(s)) * (*f)(s); });
}

// ---------------------------------------------------------------------------
// Potentials

double guichardet_A(double th, Tangent tangent, GaugePatch patch) {
  if (patch == GaugePatch::North) {
    if (th > kPi - kPoleTol) throw ValidationError("guichardet_A: evaluation at the south pole in the North patch");
    return -0.5 * (1.0 - std::cos(th)) * tangent.second;
  }
  if (th < kPoleTol) throw ValidationError("guichardet_A: evaluation at the north pole in the South patch");
  return 0.5 * (1.0 + std::cos(th)) * tangent.second;
}

BlochAxis bloch_axis(const BlochField& field, const ShapePoint& point, Tangent tangent) {
  const auto g = field.evaluate(point.colatitude, point.azimuth, tangent);
  if (std::abs(norm(g.n) - 1.0) > 1e-12) throw ValidationError("bloch_axis: non-unit field value");
  return {g.n, g.dn};
}

namespace {

double omega_from_geometry(const BlochField::Geometry& g, GaugePatch bloch_patch) {
  if (bloch_patch == GaugePatch::North) {
    if (g.mu > kPi - kPoleTol) throw ValidationError("omega_form: Bloch axis crosses the south pole in the North patch");
    return -0.5 * (1.0 - std::cos(g.mu)) * g.dlambda;
  }
  if (g.mu < kPoleTol) throw ValidationError("omega_form: Bloch axis crosses the north pole in the South patch");
  return 0.5 * (1.0 + std::cos(g.mu)) * g.dlambda;
}

Vec3 vector_from_geometry(const BlochField::Geometry& g, double a_value, cplx psi, const ConnectionOptions& o) {
  const Vec3 dnxn = cross(g.dn, g.n);
  Vec3 v = g.n * (a_value + o.abelian_offset) + dnxn;
  if (o.coupling == TransverseCoupling::Geometric)
    v += g.dn * psi.real() + dnxn * psi.imag();
  else
    v += g.e1 * psi.real() + g.e2 * psi.imag();
  return v;
}

}  // namespace

double omega_form(const BlochField& field, double th, double ph, Tangent tangent, GaugePatch bloch_patch) {
  if (field.is_pinned()) return 0.0;
  return omega_from_geometry(field.evaluate(th, ph, tangent), bloch_patch);
}

Vec3 connection_vector(double th, double ph, Tangent tangent, const BlochField& field, cplx psi,
                       const ConnectionOptions& options) {
  const auto g = field.evaluate(th, ph, tangent);
  return vector_from_geometry(g, guichardet_A(th, tangent, options.patch), psi, options);
}

ConnectionSample wz_connection(double th, double ph, Tangent tangent, const BlochField& field, cplx psi,
                               const ConnectionOptions& options) {
  if (!finite(psi)) throw ValidationError("wz_connection: non-finite ψ");
  const auto g = field.evaluate(th, ph, tangent);
  ConnectionSample s;
  s.A = guichardet_A(th, tangent, options.patch);
  s.omega = field.is_pinned() ? 0.0 : omega_from_geometry(g, options.bloch_patch);
  s.abelian = s.A + s.omega;
  s.vector = vector_from_geometry(g, s.A, psi, options);
  s.full = su2_from_vector(s.vector);
  // Frame components: dn = a e1 + b e2 with a = μ', b = sin μ λ'.
  const double a = g.dmu;
  const double b = std::sin(g.mu) * g.dlambda;
  s.cho = cplx{b, a};
  s.transverse = options.coupling == TransverseCoupling::Geometric ? psi * cplx{a, -b} : std::conj(psi);
  return s;
}

Mat2 bloch_frame(double lambda, double mu) {
  const cplx i{0.0, 1.0};
  const Mat2 rz{{std::exp(-0.5 * i * lambda), 0.0, 0.0, std::exp(0.5 * i * lambda)}};
  const double c = std::cos(0.5 * mu), s = std::sin(0.5 * mu);
  const Mat2 ry{{c, -s, s, c}};
  return rz * ry;
}

Mat2 curvature(double th, double ph, const BlochField& field, cplx psi, PsiGradient dpsi, GaugePatch patch) {
  if (!finite(psi) || !finite(dpsi.first) || !finite(dpsi.second))
    throw ValidationError("curvature: non-finite ψ derivative data");
  const ConnectionOptions opts{TransverseCoupling::Geometric, patch, GaugePatch::North, 0.0};
  const double h = kCurvatureStep;
  auto comp = [&](double t, double p, cplx ps, Tangent dir) {
    return su2_from_vector(connection_vector(t, p, dir, field, ps, opts));
  };
  const Tangent d_th{1.0, 0.0};
  const Tangent d_ph{0.0, 1.0};
  const Mat2 a_th = comp(th, ph, psi, d_th);
  const Mat2 a_ph = comp(th, ph, psi, d_ph);
  const Mat2 da_ph_dth =
      (comp(th + h, ph, psi + h * dpsi.first, d_ph) - comp(th - h, ph, psi - h * dpsi.first, d_ph)) * (0.5 / h);
  const Mat2 da_th_dph =
      (comp(th, ph + h, psi + h * dpsi.second, d_th) - comp(th, ph - h, psi - h * dpsi.second, d_th)) * (0.5 / h);
  return da_ph_dth - da_th_dph + (a_th * a_ph - a_ph * a_th);
}

}  // namespace shapeholo
