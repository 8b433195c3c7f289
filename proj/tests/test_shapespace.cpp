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
#include "shapeholo/shapespace.hpp"
#include "shapeholo/trimer_dynamics.hpp"

using namespace shapeholo;

namespace {

TriangleConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0), mass(0.3, 5.0);
  std::array<Vec3, 3> v;
  for (auto& p : v) p = {pos(rng), pos(rng), 0.0};
  return TriangleConfig::centered(v, {mass(rng), mass(rng), mass(rng)});
}

TriangleConfig rotate_z(const TriangleConfig& c, double a) {
  TriangleConfig r = c;
  for (auto& p : r.vertices) p = {std::cos(a) * p.x - std::sin(a) * p.y, std::sin(a) * p.x + std::cos(a) * p.y, p.z};
  return r;
}

double azimuth_distance(double a, double b) { return std::abs(wrap_pi(a - b)); }

}  // namespace

TEST_CASE("kinetic metric isometry on random configurations") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_config(rng);
    const auto j = to_jacobi(c);
    const double lhs = std::norm(j.z1) + std::norm(j.z2);
    CHECK(lhs == doctest::Approx(c.mass_weighted_size()).epsilon(1e-10));
  }
}

TEST_CASE("collinear symmetric configuration has vanishing second Jacobi vector") {
  const auto c = TriangleConfig::centered({Vec3{-1, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 0}}, {1, 1, 1});
  const auto j = to_jacobi(c);
  CHECK(std::abs(j.z2) < 1e-15);
  CHECK(std::abs(j.z1) == doctest::Approx(std::sqrt(0.5) * 2.0));
}

TEST_CASE("standard triangle at t = 0 matches the reduced-mass oracle") {
  const auto b = bond_lengths(0.0, BondDrive::standard());
  CHECK(b.xi12 == doctest::Approx(1.3));
  CHECK(b.xi13 == doctest::Approx(1.0 + 0.15 * std::cos(kPi / 4)));
  const auto j = to_jacobi(shape_from_bonds(b, kStandardMasses));
  // Isosceles: z1 along the base, z2 along the apex height.
  const double mu1 = 2.1 * 2.1 / 4.2, mu2 = 4.2 * 4.7 / 8.9;
  const double height = std::sqrt(b.xi13 * b.xi13 - 0.25 * b.xi12 * b.xi12);
  CHECK(std::abs(j.z1) == doctest::Approx(std::sqrt(mu1) * 1.3).epsilon(1e-12));
  CHECK(std::abs(j.z2) == doctest::Approx(std::sqrt(mu2) * height).epsilon(1e-12));
  // Frozen regression values.
  CHECK(j.z1.real() == doctest::Approx(1.3321035995747479).epsilon(1e-13));
  CHECK(j.z2.imag() == doctest::Approx(1.3327934404297022).epsilon(1e-13));
}

TEST_CASE("to_jacobi rejects degenerate and invalid input") {
  CHECK_THROWS_AS(to_jacobi(TriangleConfig::centered({Vec3{}, Vec3{}, Vec3{}}, {1, 1, 1})), ValidationError);
  CHECK_THROWS_AS(TriangleConfig::centered({Vec3{NAN, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}, {1, 1, 1}), ValidationError);
  CHECK_THROWS_AS(TriangleConfig::centered({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}, {1, -1, 1}), ValidationError);
  TriangleConfig off;
  off.vertices = {Vec3{1, 0, 0}, Vec3{2, 0, 0}, Vec3{0, 1, 0}};
  CHECK_THROWS_AS(off.validate(), ValidationError);
}

TEST_CASE("preshape of analytic points") {
  const auto north = to_preshape({1.0, 0.0});
  CHECK(north.size == doctest::Approx(1.0));
  CHECK(north.colatitude == doctest::Approx(0.0));
  CHECK(north.phi1 == doctest::Approx(0.0));
  CHECK(north.phi2 == doctest::Approx(0.0));
  CHECK(hopf_project(north).pole);

  const auto eq = to_preshape({1.0 / std::sqrt(2.0), cplx{0.0, 1.0 / std::sqrt(2.0)}});
  CHECK(eq.size == doctest::Approx(1.0));
  CHECK(eq.colatitude == doctest::Approx(kPi / 2));
  CHECK(eq.phi1 == doctest::Approx(0.0));
  CHECK(eq.phi2 == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(to_preshape({0.0, 0.0}), ValidationError);
}

TEST_CASE("preshape round trip on random pairs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const JacobiPair j{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const auto r = to_preshape(j).reconstruct();
    const double scale = std::sqrt(std::norm(j.z1) + std::norm(j.z2));
    CHECK(std::abs(r.z1 - j.z1) < 1e-12 * scale);
    CHECK(std::abs(r.z2 - j.z2) < 1e-12 * scale);
  }
}

TEST_CASE("Hopf projection is the phase difference and ignores the fiber") {
  PreshapePoint p;
  p.size = 1.0;
  p.colatitude = kPi / 2;
  p.phi1 = 0.3;
  p.phi2 = 1.0;
  const auto s = hopf_project(p);
  CHECK(s.colatitude == doctest::Approx(kPi / 2));
  CHECK(s.azimuth == doctest::Approx(0.7));

  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const JacobiPair j{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const cplx e = std::polar(1.0, ang(rng));
    const auto a = hopf_project(to_preshape(j));
    const auto b = hopf_project(to_preshape({e * j.z1, e * j.z2}));
    CHECK(a.colatitude == doctest::Approx(b.colatitude).epsilon(1e-12));
    CHECK(azimuth_distance(a.azimuth, b.azimuth) < 1e-10);
  }
}

TEST_CASE("shape is invariant under rigid rotations about the normal") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const auto c = random_config(rng);
    const auto a = shape_of(c);
    const auto b = shape_of(rotate_z(c, ang(rng)));
    CHECK(std::abs(a.colatitude - b.colatitude) < 1e-10);
    CHECK(azimuth_distance(a.azimuth, b.azimuth) < 1e-10);
  }
}

TEST_CASE("triangle_from_sides reproduces the side lengths") {
  const auto c = triangle_from_sides(3.0, 4.0, 5.0, {1.0, 2.0, 3.0});
  auto dist = [&](int i, int j) {
    const Vec3 d = c.vertices[static_cast<std::size_t>(i)] - c.vertices[static_cast<std::size_t>(j)];
    return std::sqrt(dot(d, d));
  };
  CHECK(dist(0, 1) == doctest::Approx(3.0));
  CHECK(dist(0, 2) == doctest::Approx(4.0));
  CHECK(dist(1, 2) == doctest::Approx(5.0));
  CHECK(c.vertices[2].y > 0.0);
  CHECK_THROWS_AS(triangle_from_sides(1.0, 1.0, 3.0, {1, 1, 1}), ValidationError);
}

TEST_CASE("solid angle of small ellipse, point and equator") {
  const auto ell = make_ellipse_loop(kPi / 2, 0.0, 0.1, 0.1, 256);
  CHECK(solid_angle(ell) == doctest::Approx(kPi * 0.01).epsilon(0.01));
  CHECK(solid_angle(ShapeLoop::point(1.0, 2.0, 64)) == 0.0);
  const auto equator = ShapeLoop::from_function([](double s) { return std::pair{kPi / 2, s}; }, 1024);
  CHECK(std::abs(solid_angle(equator) - kTwoPi) < 1e-6);
}

TEST_CASE("ellipse area law converges with first order in a squared") {
  std::vector<double> err;
  for (double a : {0.4, 0.2, 0.1}) {
    const double omega = solid_angle(make_ellipse_loop(kPi / 2, 0.0, a, a, 4096));
    err.push_back(std::abs(omega / (kPi * a * a) - 1.0));
  }
  // Relative error ∝ a²: quartering per halving.
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("reversal flips the solid angle exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  for (int i = 0; i < 20; ++i) {
    const auto loop = make_ellipse_loop(1.0 + u(rng), 6.0, u(rng), u(rng), 512);
    CHECK(solid_angle(loop.reversed()) == -solid_angle(loop));
    CHECK(solid_angle(make_ellipse_loop(1.2, 0.0, 0.3, 0.2, 512, -1)) ==
          doctest::Approx(-solid_angle(make_ellipse_loop(1.2, 0.0, 0.3, 0.2, 512, +1))).epsilon(1e-12));
  }
}

TEST_CASE("azimuth unwrapping across zero and patch checks") {
  const auto loop = make_ellipse_loop(kPi / 2, 0.0, 0.2, 0.2, 512);
  const auto shifted = make_ellipse_loop(kPi / 2, kTwoPi - 1e-3, 0.2, 0.2, 512);
  CHECK(solid_angle(shifted) == doctest::Approx(solid_angle(loop)).epsilon(1e-12));
  CHECK(loop.winding() == 0);

  const auto around_south = ShapeLoop::from_function([](double s) { return std::pair{kPi - 0.2, s}; }, 256);
  CHECK_THROWS_AS(check_patch(ShapeLoop::point(kPi, 0.0, 16), GaugePatch::North), ValidationError);
  CHECK_NOTHROW(check_patch(around_south, GaugePatch::North));
  CHECK_NOTHROW(check_patch(around_south, GaugePatch::South));
  // North and South representatives differ by 4π per winding.
  CHECK(solid_angle(around_south, GaugePatch::North) - solid_angle(around_south, GaugePatch::South) ==
        doctest::Approx(2.0 * kTwoPi));
}

TEST_CASE("loop construction rejects open or short sample lists") {
  std::vector<std::pair<double, double>> open{{1.0, 0.0}, {1.1, 0.1}, {1.2, 0.2}, {1.1, 0.3}, {1.0, 0.4},
                                              {0.9, 0.3}, {0.8, 0.2}, {0.9, 0.1}, {1.05, 0.05}};
  CHECK_THROWS_AS(ShapeLoop::from_samples(open), ValidationError);
  std::vector<std::pair<double, double>> few{{1.0, 0.0}, {1.1, 0.1}, {1.0, 0.0}};
  CHECK_THROWS_AS(ShapeLoop::from_samples(few), ValidationError);
}
