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

#include "shapeholo/shapespace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shapeholo/error.hpp"

namespace shapeholo {

namespace {

bool finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

constexpr double kClosureTol = 1e-10;

}  // namespace

double wrap_pi(double angle) {
  double a = std::remainder(angle, kTwoPi);  // [−π, π]
  if (a <= -kPi) a += kTwoPi;
  return a;
}

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// ---------------------------------------------------------------------------
// TriangleConfig

TriangleConfig TriangleConfig::centered(const std::array<Vec3, 3>& vertices, const std::array<double, 3>& masses) {
  TriangleConfig c{vertices, masses};
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("TriangleConfig: masses must be positive and finite");
  Vec3 com{};
  for (int a = 0; a < 3; ++a) com += vertices[a] * masses[a];
  com = com / c.total_mass();
  for (auto& v : c.vertices) v -= com;
  c.validate();
  return c;
}

double TriangleConfig::length_scale() const {
  double s = 0.0;
  for (const auto& v : vertices) s = std::max(s, norm(v));
  return s;
}

double TriangleConfig::mass_weighted_size() const {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) s += masses[a] * dot(vertices[a], vertices[a]);
  return s;
}

void TriangleConfig::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!finite(vertices[a])) throw ValidationError("TriangleConfig: non-finite vertex");
    if (!(masses[a] > 0.0) || !std::isfinite(masses[a]))
      throw ValidationError("TriangleConfig: masses must be positive and finite");
  }
  Vec3 com{};
  for (int a = 0; a < 3; ++a) com += vertices[a] * masses[a];
  com = com / total_mass();
  const double scale = std::max(length_scale(), 1e-300);
  if (norm(com) > 1e-12 * scale)
    throw ValidationError("TriangleConfig: mass-weighted centroid is not at the origin");
}

// ---------------------------------------------------------------------------
// Jacobi / preshape / shape

JacobiPair to_jacobi(const TriangleConfig& config) {
  config.validate();
  const auto& r = config.vertices;
  const auto& m = config.masses;
  if (config.length_scale() == 0.0) throw ValidationError("to_jacobi: all vertices coincide (zero preshape size)");

  // In-plane coordinates: the z = 0 plane when the triangle lies in it,
  // otherwise the plane through the three vertices.
  const double scale = config.length_scale();
  const bool planar_z = std::abs(r[0].z) <= 1e-12 * scale && std::abs(r[1].z) <= 1e-12 * scale &&
                        std::abs(r[2].z) <= 1e-12 * scale;
  Vec3 e1{1.0, 0.0, 0.0};
  Vec3 e2{0.0, 1.0, 0.0};
  if (!planar_z) {
    Vec3 base = r[1] - r[0];
    if (norm(base) <= 1e-14 * scale) base = r[2] - r[0];
    e1 = base / norm(base);
    Vec3 normal = cross(r[1] - r[0], r[2] - r[0]);
    if (norm(normal) <= 1e-14 * scale * scale) {
      // collinear: any perpendicular completes the frame
      const Vec3 trial = std::abs(e1.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
      normal = cross(e1, trial);
    }
    normal = normal / norm(normal);
    e2 = cross(normal, e1);
  }
  auto to_c = [&](const Vec3& v) { return cplx{dot(v, e1), dot(v, e2)}; };

  const double m12 = m[0] + m[1];
  const double mu1 = m[0] * m[1] / m12;
  const double mu2 = m12 * m[2] / (m12 + m[2]);
  const Vec3 c12 = (r[0] * m[0] + r[1] * m[1]) / m12;
  return {std::sqrt(mu1) * to_c(r[1] - r[0]), std::sqrt(mu2) * to_c(r[2] - c12)};
}

PreshapePoint to_preshape(const JacobiPair& j) {
  if (!std::isfinite(j.z1.real()) || !std::isfinite(j.z1.imag()) || !std::isfinite(j.z2.real()) ||
      !std::isfinite(j.z2.imag()))
    throw ValidationError("to_preshape: non-finite Jacobi coordinates");
  const double a1 = std::abs(j.z1);
  const double a2 = std::abs(j.z2);
  const double size = std::hypot(a1, a2);
  if (!(size > 0.0)) throw ValidationError("to_preshape: zero-size configuration");
  PreshapePoint p;
  p.size = size;
  p.colatitude = 2.0 * std::atan2(a2, a1);
  p.phi1 = a1 > 0.0 ? wrap_two_pi(std::arg(j.z1)) : 0.0;
  p.phi2 = a2 > 0.0 ? wrap_two_pi(std::arg(j.z2)) : 0.0;
  return p;
}

JacobiPair PreshapePoint::reconstruct() const {
  return {std::polar(size * std::cos(0.5 * colatitude), phi1), std::polar(size * std::sin(0.5 * colatitude), phi2)};
}

double PreshapePoint::internal_phase() const { return wrap_two_pi(phi2 - phi1); }
double PreshapePoint::external_phase() const { return -0.5 * (phi1 + phi2); }

ShapePoint hopf_project(const PreshapePoint& p) {
  if (!(p.size > 0.0) || !(p.colatitude >= 0.0 && p.colatitude <= kPi))
    throw ValidationError("hopf_project: invalid preshape point");
  ShapePoint s;
  s.colatitude = p.colatitude;
  s.pole = p.colatitude == 0.0 || p.colatitude == kPi;
  s.azimuth = s.pole ? 0.0 : p.internal_phase();
  return s;
}

ShapePoint shape_of(const TriangleConfig& config) { return hopf_project(to_preshape(to_jacobi(config))); }

Vec3 ShapePoint::unit() const {
  return {std::sin(colatitude) * std::cos(azimuth), std::sin(colatitude) * std::sin(azimuth), std::cos(colatitude)};
}

TriangleConfig triangle_from_sides(double xi12, double xi13, double xi23, const std::array<double, 3>& masses,
                                   double margin) {
  if (!std::isfinite(xi12) || !std::isfinite(xi13) || !std::isfinite(xi23))
    throw ValidationError("triangle_from_sides: non-finite side length");
  const double slack = std::min({xi12 + xi13 - xi23, xi12 + xi23 - xi13, xi13 + xi23 - xi12});
  if (!(xi12 > 0.0) || !(xi13 > 0.0) || !(xi23 > 0.0) || slack < margin)
    throw ValidationError("triangle_from_sides: triangle inequality violated (slack " + std::to_string(slack) + ")");
  const double x3 = (xi13 * xi13 - xi23 * xi23 + xi12 * xi12) / (2.0 * xi12);
  const double y3 = std::sqrt(std::max(0.0, xi13 * xi13 - x3 * x3));
  return TriangleConfig::centered({Vec3{0.0, 0.0, 0.0}, Vec3{xi12, 0.0, 0.0}, Vec3{x3, y3, 0.0}}, masses);
}

// ---------------------------------------------------------------------------
// ShapeLoop

ShapeLoop::ShapeLoop(std::vector<Node> nodes, int orientation) : nodes_(std::move(nodes)), orientation_(orientation) {}

ShapeLoop ShapeLoop::from_samples(std::span<const std::pair<double, double>> samples, int orientation) {
  if (samples.size() < 9) throw ValidationError("ShapeLoop: need at least 8 segments (9 samples)");
  if (orientation != 1 && orientation != -1) throw ValidationError("ShapeLoop: orientation must be +1 or -1");
  std::vector<Node> nodes;
  nodes.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto [th, ph] = samples[k];
    if (!std::isfinite(th) || !std::isfinite(ph)) throw ValidationError("ShapeLoop: non-finite sample");
    if (th < -1e-12 || th > kPi + 1e-12) throw ValidationError("ShapeLoop: colatitude outside [0, π]");
    double unwrapped = ph;
    if (k > 0) unwrapped = nodes.back().azimuth + wrap_pi(ph - nodes.back().azimuth);
    nodes.push_back({std::clamp(th, 0.0, kPi), unwrapped});
  }
  const Node& first = nodes.front();
  const Node& last = nodes.back();
  const bool at_pole = first.colatitude < 1e-12 || first.colatitude > kPi - 1e-12;
  if (std::abs(first.colatitude - last.colatitude) > kClosureTol ||
      (!at_pole && std::abs(wrap_pi(last.azimuth - first.azimuth)) > kClosureTol))
    throw ValidationError("ShapeLoop: loop is not closed");
  return ShapeLoop(std::move(nodes), orientation);
}

ShapeLoop ShapeLoop::from_function(const std::function<std::pair<double, double>(double)>& f, int n, int orientation) {
  if (n < 8) throw ValidationError("ShapeLoop: need at least 8 segments");
  std::vector<std::pair<double, double>> samples;
  samples.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) samples.push_back(f(kTwoPi * k / n));
  return from_samples(samples, orientation);
}

ShapeLoop ShapeLoop::point(double colatitude, double azimuth, int n) {
  return from_function([=](double) { return std::pair{colatitude, azimuth}; }, n);
}

int ShapeLoop::winding() const {
  return static_cast<int>(std::lround((nodes_.back().azimuth - nodes_.front().azimuth) / kTwoPi));
}

ShapeLoop::Node ShapeLoop::at(double s) const {
  const double h = spacing();
  const double x = std::clamp(s, 0.0, kTwoPi) / h;
  const int k = std::min(static_cast<int>(x), segments() - 1);
  const double w = x - k;
  const Node& a = node(k);
  const Node& b = node(k + 1);
  return {a.colatitude + w * (b.colatitude - a.colatitude), a.azimuth + w * (b.azimuth - a.azimuth)};
}

ShapeLoop::Node ShapeLoop::midpoint(int k) const {
  const Node& a = node(k);
  const Node& b = node(k + 1);
  return {0.5 * (a.colatitude + b.colatitude), 0.5 * (a.azimuth + b.azimuth)};
}

std::pair<double, double> ShapeLoop::tangent(int k) const {
  const Node& a = node(k);
  const Node& b = node(k + 1);
  const double h = spacing();
  return {(b.colatitude - a.colatitude) / h, (b.azimuth - a.azimuth) / h};
}

ShapeLoop ShapeLoop::reversed() const {
  std::vector<Node> nodes(nodes_.rbegin(), nodes_.rend());
  return ShapeLoop(std::move(nodes), -orientation_);
}

double ShapeLoop::min_colatitude() const {
  double v = kPi;
  for (const auto& n : nodes_) v = std::min(v, n.colatitude);
  return v;
}

double ShapeLoop::max_colatitude() const {
  double v = 0.0;
  for (const auto& n : nodes_) v = std::max(v, n.colatitude);
  return v;
}

void check_patch(const ShapeLoop& loop, GaugePatch patch, double tol) {
  if (patch == GaugePatch::North && loop.max_colatitude() > kPi - tol)
    throw ValidationError("loop reaches the south pole excluded by the North patch");
  if (patch == GaugePatch::South && loop.min_colatitude() < tol)
    throw ValidationError("loop reaches the north pole excluded by the South patch");
}

double solid_angle(const ShapeLoop& loop, GaugePatch patch) {
  check_patch(loop, patch);
  const double offset = patch == GaugePatch::North ? 1.0 : -1.0;
  // Positive and negative parts are summed separately in sorted order so the
  // result does not depend on traversal direction (reversal negates it bit for bit).
  std::vector<double> pos, neg;
  for (int k = 0; k < loop.segments(); ++k) {
    const auto& a = loop.node(k);
    const auto& b = loop.node(k + 1);
    const double fa = offset - std::cos(a.colatitude);
    const double fb = offset - std::cos(b.colatitude);
    const double t = 0.5 * (fa + fb) * (b.azimuth - a.azimuth);
    (t >= 0.0 ? pos : neg).push_back(std::abs(t));
  }
  auto total = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  };
  return total(pos) - total(neg);
}

}  // namespace shapeholo
