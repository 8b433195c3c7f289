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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "shapeholo/error.hpp"
#include "shapeholo/gates.hpp"
#include "shapeholo/holonomy.hpp"
#include "shapeholo/wz_connection.hpp"
#include "support.hpp"

using namespace shapeholo;
using shapeholo::testing::max_abs;
using shapeholo::testing::random_field;

namespace {

Vec3 field_n(const BlochField& f, double th, double ph) { return f.evaluate(th, ph, {0.0, 0.0}).n; }

// Small ϑ-then-φ square with m samples per side.
ShapeLoop square(double th, double ph, double h, int m) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < m; ++i) pts.emplace_back(th + h * i / m, ph);
  for (int i = 0; i < m; ++i) pts.emplace_back(th + h, ph + h * i / m);
  for (int i = 0; i < m; ++i) pts.emplace_back(th + h - h * i / m, ph + h);
  for (int i = 0; i < m; ++i) pts.emplace_back(th, ph + h - h * i / m);
  pts.emplace_back(th, ph);
  return ShapeLoop::from_samples(pts);
}

}  // namespace

TEST_CASE("Guichardet potential in both patches") {
  CHECK(guichardet_A(kPi / 2, {0.0, 1.0}, GaugePatch::North) == doctest::Approx(-0.5));
  CHECK(guichardet_A(kPi / 2, {0.0, 1.0}, GaugePatch::South) == doctest::Approx(0.5));
  CHECK(std::abs(guichardet_A(1e-9, {0.0, 1.0}, GaugePatch::North)) < 1e-15);
  CHECK(guichardet_A(1.0, {0.7, 0.0}, GaugePatch::North) == 0.0);
  CHECK_THROWS_AS(guichardet_A(kPi, {0.0, 1.0}, GaugePatch::North), ValidationError);
  CHECK_THROWS_AS(guichardet_A(0.0, {0.0, 1.0}, GaugePatch::South), ValidationError);

  // Equator integral: −π (North), +π (South); the 2π jump is the unit Dirac string.
  const int n = 1000;
  double north = 0.0, south = 0.0;
  for (int k = 0; k < n; ++k) {
    north += guichardet_A(kPi / 2, {0.0, 1.0}, GaugePatch::North) * kTwoPi / n;
    south += guichardet_A(kPi / 2, {0.0, 1.0}, GaugePatch::South) * kTwoPi / n;
  }
  CHECK(north == doctest::Approx(-kPi));
  CHECK(south == doctest::Approx(kPi));
  CHECK(south - north == doctest::Approx(kTwoPi));
}

TEST_CASE("Bloch axis of the pinned and radial fields") {
  const auto pinned = bloch_axis(BlochField::pinned(), ShapePoint{1.1, 0.4, false}, {0.3, -0.8});
  CHECK(pinned.n.z == 1.0);
  CHECK(norm(pinned.dn) == 0.0);

  const auto radial = bloch_axis(BlochField::radial(), ShapePoint{kPi / 2, 0.9, false}, {0.0, 1.0});
  CHECK(norm(radial.dn) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(radial.dn.z) < 1e-8);
  CHECK(std::abs(dot(radial.dn, radial.n)) < 1e-10);
}

TEST_CASE("Bloch axis derivative matches finite differences on random fields") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> th(0.4, 2.7), ph(0.0, kTwoPi), t(-1.0, 1.0);
  const double h = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const auto field = random_field(rng);
    const double a = th(rng), b = ph(rng);
    const Tangent tan{t(rng), t(rng)};
    const auto axis = field.evaluate(a, b, tan);
    CHECK(std::abs(norm(axis.n) - 1.0) < 1e-12);
    CHECK(std::abs(dot(axis.dn, axis.n)) < 1e-10);
    const Vec3 fd = (field_n(field, a + h * tan.first, b + h * tan.second) -
                     field_n(field, a - h * tan.first, b - h * tan.second)) /
                    (2.0 * h);
    CHECK(norm(axis.dn - fd) < 1e-6);
  }
}

TEST_CASE("omega: pinned vanishes, radial equals A, Stokes against the n-image area") {
  CHECK(omega_form(BlochField::pinned(), 1.0, 2.0, {0.5, 0.5}) == 0.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> th(0.3, 2.8), ph(0.0, kTwoPi), t(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double a = th(rng), b = ph(rng);
    const Tangent tan{t(rng), t(rng)};
    CHECK(omega_form(BlochField::radial(), a, b, tan) ==
          doctest::Approx(guichardet_A(a, tan, GaugePatch::North)).epsilon(1e-10));
  }

  for (int i = 0; i < 5; ++i) {
    const auto field = random_field(rng);
    const auto loop = make_ellipse_loop(th(rng), ph(rng), 0.15, 0.1, 2048);
    double integral = 0.0;
    std::vector<Vec3> image;
    for (int k = 0; k < loop.segments(); ++k) {
      const auto mid = loop.midpoint(k);
      integral += omega_form(field, mid.colatitude, mid.azimuth, loop.tangent(k)) * loop.spacing();
      image.push_back(field_n(field, loop.node(k).colatitude, loop.node(k).azimuth));
    }
    const double area = shapeholo::testing::polygon_solid_angle(image);
    CHECK(std::abs(area) > 1e-3);
    CHECK(integral == doctest::Approx(-0.5 * area).epsilon(0.01));
  }
}

TEST_CASE("pinned field with zero control collapses to the abelian monopole") {
  const auto s = wz_connection(1.2, 0.5, {0.3, 0.7}, BlochField::pinned(), 0.0);
  const double A = guichardet_A(1.2, {0.3, 0.7}, GaugePatch::North);
  CHECK(s.A == doctest::Approx(A));
  CHECK(s.abelian == doctest::Approx(A));
  CHECK(std::abs(s.transverse) == 0.0);
  CHECK(max_abs(s.full - su2_from_vector({0.0, 0.0, A})) < 1e-15);
}

TEST_CASE("connection samples are traceless anti-Hermitian and reassemble exactly") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(0.3, 2.8), ph(0.0, kTwoPi), t(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto field = random_field(rng);
    const double a = th(rng), b = ph(rng);
    const Tangent tan{t(rng), t(rng)};
    const cplx psi{t(rng), t(rng)};
    for (auto coupling : {TransverseCoupling::Geometric, TransverseCoupling::Direct}) {
      ConnectionOptions opt;
      opt.coupling = coupling;
      const auto s = wz_connection(a, b, tan, field, psi, opt);
      CHECK(std::abs(s.full.trace()) < 1e-12);
      CHECK(max_abs(s.full + s.full.adjoint()) < 1e-12);

      const auto g = field.evaluate(a, b, tan);
      const Mat2 r = bloch_frame(g.lambda, g.mu);
      const cplx x = s.cho + s.transverse;
      const Mat2 rebuilt = su2_from_vector({x.real(), -x.imag(), s.A});
      CHECK(max_abs(r.adjoint() * s.full * r - rebuilt) < 1e-10);
      CHECK(s.abelian == doctest::Approx(s.A + s.omega));
      if (coupling == TransverseCoupling::Geometric) {
        const cplx j = psi * cplx{g.dmu, -std::sin(g.mu) * g.dlambda};
        CHECK(std::abs(s.transverse - j) < 1e-12);
      }
    }
  }
}

TEST_CASE("Bloch frame maps the Pauli axes onto (e1, e2, n)") {
  const double lambda = 0.7, mu = 1.1;
  const Mat2 r = bloch_frame(lambda, mu);
  const auto g = BlochField::analytic([&](double, double) { return lambda; }, [&](double, double) { return mu; })
                     .evaluate(1.0, 1.0, {0.0, 0.0});
  auto sigma = [](const Vec3& v) { return pauli::X * v.x + pauli::Y * v.y + pauli::Z * v.z; };
  CHECK(max_abs(r * pauli::X * r.adjoint() - sigma(g.e1)) < 1e-12);
  CHECK(max_abs(r * pauli::Y * r.adjoint() - sigma(g.e2)) < 1e-12);
  CHECK(max_abs(r * pauli::Z * r.adjoint() - sigma(g.n)) < 1e-12);
}

TEST_CASE("monopole curvature at the equator") {
  const Mat2 f = curvature(kPi / 2, 0.3, BlochField::pinned(), 0.0, {0.0, 0.0});
  const Vec3 v = su2_to_vector(f);
  CHECK(std::abs(std::abs(v.z) - 0.5) < 1e-6);
  CHECK(std::hypot(v.x, v.y) < 1e-9);
}

TEST_CASE("plaquette holonomy agrees with curvature times area to second order") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> th(0.6, 2.4), ph(0.0, kTwoPi), t(-0.5, 0.5);
  for (int i = 0; i < 6; ++i) {
    const auto field = random_field(rng);
    const cplx psi{t(rng), t(rng)};
    const double a = th(rng), b = ph(rng);
    std::vector<double> err;
    for (double h : {0.02, 0.01, 0.005}) {
      HolonomyLoop loop;
      loop.shape = square(a, b, h, 64);
      loop.bloch = field;
      loop.control = ControlField::constant(psi);
      const Mat2 w = integrate_wilson(loop).matrix;
      const Mat2 f = curvature(a + 0.5 * h, b + 0.5 * h, field, psi, {0.0, 0.0});
      err.push_back(max_abs(w - Mat2::identity() + f * (h * h)));
    }
    // Residual is third order in the side length.
    CHECK(err[2] < 0.02 * 0.005 * 0.005);
    CHECK(err[0] / err[1] > 7.0);
    CHECK(err[1] / err[2] > 7.0);
  }
}

TEST_CASE("curvature samples span su(2)") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> th(0.4, 2.7), ph(0.0, kTwoPi), t(-1.0, 1.0);
  std::array<std::array<double, 3>, 3> gram{};
  const int samples = 24;
  for (int i = 0; i < samples; ++i) {
    const auto field = random_field(rng);
    const Vec3 v = su2_to_vector(curvature(th(rng), ph(rng), field, {t(rng), t(rng)}, {{t(rng), t(rng)}, {t(rng), t(rng)}}));
    const double c[3] = {v.x, v.y, v.z};
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) gram[r][s] += c[r] * c[s] / samples;
  }
  const auto ev = shapeholo::testing::symmetric_eigenvalues(gram);
  CHECK(std::sqrt(ev[0]) > 1e-6);
  CHECK(ev[0] / ev[2] > 1e-3);
}

TEST_CASE("control field helpers") {
  const auto c = ControlField::function([](double s) { return std::polar(0.2, s); });
  CHECK(c.periodic());
  CHECK(std::abs(c.reversed()(0.5) - c(kTwoPi - 0.5)) < 1e-15);
  CHECK(std::abs(c.reversed(-1.0)(0.5) + c(kTwoPi - 0.5)) < 1e-15);
  CHECK(std::abs(c.rotated([](double s) { return -s; })(1.3) - 0.2) < 1e-15);
  const auto open = ControlField::function([](double s) { return cplx{s, 0.0}; });
  CHECK_FALSE(open.periodic());

  const auto sampled = ControlField::sampled({0.0, 1.0, 0.0, cplx{0.0, 1.0}, 0.0});
  CHECK(std::abs(sampled(kTwoPi / 8) - 0.5) < 1e-15);
  CHECK(sampled.periodic());
  CHECK(std::abs(ControlField::zero()(2.0)) == 0.0);
}
