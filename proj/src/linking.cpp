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

#include "shapeholo/linking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shapeholo/error.hpp"

namespace shapeholo {

SpaceCurve SpaceCurve::from_points(std::vector<Vec3> points, bool closed) {
  for (const auto& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw ValidationError("SpaceCurve: non-finite sample");
  SpaceCurve c;
  c.closed_ = closed;
  c.samples_ = std::move(points);
  if (c.samples_.size() < 2) throw ValidationError("SpaceCurve: need at least 16 points");
  const double diam = c.diameter();
  if (!(diam > 0.0)) throw ValidationError("SpaceCurve: degenerate curve");
  if (closed && norm(c.samples_.back() - c.samples_.front()) >= 1e-10 * diam) c.samples_.push_back(c.samples_.front());
  const std::size_t distinct = c.samples_.size() - (closed ? 1 : 0);
  if (distinct < 16) throw ValidationError("SpaceCurve: need at least 16 points");
  for (std::size_t i = 1; i < c.samples_.size(); ++i)
    if (norm(c.samples_[i] - c.samples_[i - 1]) <= 1e-14 * diam)
      throw ValidationError("SpaceCurve: consecutive duplicate points");
  return c;
}

SpaceCurve SpaceCurve::circle(const Vec3& center, const Vec3& u, const Vec3& v, double radius, int samples) {
  if (!(radius > 0.0) || samples < 16) throw ValidationError("SpaceCurve::circle: need radius > 0 and ≥ 16 samples");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 1);
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * k / samples;
    pts.push_back(center + u * (radius * std::cos(t)) + v * (radius * std::sin(t)));
  }
  return from_points(std::move(pts));
}

double SpaceCurve::diameter() const {
  Vec3 lo = samples_.front(), hi = samples_.front();
  for (const auto& p : samples_) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return norm(hi - lo);
}

SpaceCurve SpaceCurve::reversed() const {
  SpaceCurve c = *this;
  std::reverse(c.samples_.begin(), c.samples_.end());
  return c;
}

SpaceCurve SpaceCurve::translated(const Vec3& shift) const {
  SpaceCurve c = *this;
  for (auto& p : c.samples_) p += shift;
  return c;
}

SpaceCurve SpaceCurve::scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("SpaceCurve: scale factor must be positive");
  SpaceCurve c = *this;
  for (auto& p : c.samples_) p = p * factor;
  return c;
}

LinkingResult gauss_linking(const SpaceCurve& c1, const SpaceCurve& c2) {
  if (!c1.closed() || !c2.closed()) throw ValidationError("gauss_linking: curves must be closed");
  const double scale = std::max(c1.diameter(), c2.diameter());
  const auto& a = c1.samples();
  const auto& b = c2.samples();

  double min_dist = INFINITY;
  for (const auto& p : a)
    for (const auto& r : b) min_dist = std::min(min_dist, norm(p - r));
  if (min_dist <= 1e-3 * scale) throw ValidationError("gauss_linking: curves (nearly) intersect");

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const Vec3 d1 = a[i + 1] - a[i];
    const Vec3 m1 = (a[i + 1] + a[i]) * 0.5;
    double row = 0.0;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      const Vec3 d2 = b[j + 1] - b[j];
      const Vec3 r = m1 - (b[j + 1] + b[j]) * 0.5;
      const double len = norm(r);
      row += dot(cross(d1, d2), r) / (len * len * len);
    }
    total += row;
  }
  LinkingResult out;
  out.raw = total / (4.0 * kPi);
  const double rounded = std::round(out.raw);
  if (std::abs(out.raw - rounded) > 0.05) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "gauss_linking: quadrature not converged (raw %.4f); refine sampling", out.raw);
    throw NumericalError(buf);
  }
  out.value = static_cast<int>(rounded);
  return out;
}

std::pair<SpaceCurve, SpaceCurve> hopf_pair(double r1, double r2, int samples) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(r2 < 2.0 * r1)) throw ValidationError("hopf_pair: need 0 < r2 < 2 r1");
  const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
  auto a = SpaceCurve::circle({0, 0, 0}, ex, ey, r1, samples);
  auto b = SpaceCurve::circle({r1, 0, 0}, ex, ez, r2, samples);
  return {a, b.reversed()};
}

LinkData LinkData::pair(int lk, int slk_a, int slk_b) {
  LinkData d;
  d.lk = {{0, lk}, {lk, 0}};
  d.slk = {slk_a, slk_b};
  return d;
}

void LinkData::validate(std::size_t curves) const {
  if (lk.size() != curves) throw ValidationError("LinkData: linking matrix size does not match the charge list");
  for (const auto& row : lk)
    if (row.size() != curves) throw ValidationError("LinkData: linking matrix is not square");
  for (std::size_t i = 0; i < curves; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (lk[i][j] != lk[j][i]) throw ValidationError("LinkData: linking matrix is not symmetric");
  if (!slk.empty() && slk.size() != curves) throw ValidationError("LinkData: self-linking list size mismatch");
}

double cs_phase(const std::vector<double>& charges, const LinkData& link, int k) {
  if (k < 1) throw ValidationError("cs_phase: level k must be a positive integer");
  for (double q : charges)
    if (!std::isfinite(q)) throw ValidationError("cs_phase: non-finite charge");
  link.validate(charges.size());
  double phase = 0.0;
  for (std::size_t i = 0; i < charges.size(); ++i) {
    for (std::size_t j = i + 1; j < charges.size(); ++j) phase += 4.0 * kPi / k * charges[i] * charges[j] * link.lk[i][j];
    if (!link.slk.empty()) phase += 2.0 * kPi / k * charges[i] * charges[i] * link.slk[i];
  }
  const double r = std::fmod(phase, kTwoPi);
  return r < 0.0 ? r + kTwoPi : r;
}

SpaceCurve load_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_curve_csv: cannot open " + path);
  std::vector<Vec3> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    Vec3 p;
    if (!(ss >> p.x >> p.y >> p.z)) {
      if (lineno == 1) continue;  // header
      throw ValidationError("load_curve_csv: malformed line " + std::to_string(lineno) + " in " + path);
    }
    pts.push_back(p);
  }
  return SpaceCurve::from_points(std::move(pts));
}

}  // namespace shapeholo
