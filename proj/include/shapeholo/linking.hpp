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

// Linking numbers of closed space curves and the Chern–Simons phase.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shapeholo/types.hpp"

namespace shapeholo {

/// Closed polygon in 3-space. The stored samples repeat the first point at the end.
class SpaceCurve {
 public:
  /// At least 16 distinct points. A closed curve whose last point differs from
  /// the first is closed implicitly by appending the first point.
  static SpaceCurve from_points(std::vector<Vec3> points, bool closed = true);
  /// Circle of radius r about `center` in the plane spanned by (u, v), traversed u → v.
  static SpaceCurve circle(const Vec3& center, const Vec3& u, const Vec3& v, double radius, int samples);

  const std::vector<Vec3>& samples() const { return samples_; }
  bool closed() const { return closed_; }
  int segments() const { return static_cast<int>(samples_.size()) - 1; }
  double diameter() const;

  SpaceCurve reversed() const;
  SpaceCurve translated(const Vec3& shift) const;
  SpaceCurve scaled(double factor) const;

 private:
  std::vector<Vec3> samples_;
  bool closed_ = true;
};

struct LinkingResult {
  int value = 0;
  double raw = 0.0;  // pre-rounding Gauss integral
};

/// Gauss double integral over segment midpoints, rounded. Throws ValidationError
/// on open or nearly intersecting curves and NumericalError if the raw value is
/// more than 0.05 from an integer.
LinkingResult gauss_linking(const SpaceCurve& c1, const SpaceCurve& c2);

/// Unit-style Hopf link: circle of radius r1 in the xy-plane about the origin
/// and circle of radius r2 in the xz-plane about (r1, 0, 0), oriented so that
/// the linking number is +1. Requires 0 < r2 < 2 r1.
std::pair<SpaceCurve, SpaceCurve> hopf_pair(double r1 = 1.0, double r2 = 1.0, int samples = 512);

struct LinkData {
  std::vector<std::vector<int>> lk;  // symmetric, diagonal unused
  std::vector<int> slk;              // declared self-linking, default 0

  static LinkData pair(int lk, int slk_a = 0, int slk_b = 0);
  void validate(std::size_t curves) const;
};

/// (4π/k) Σ_{i<j} q_i q_j Lk_ij + (2π/k) Σ_i q_i² SLk_i, reduced to [0, 2π).
double cs_phase(const std::vector<double>& charges, const LinkData& link, int k);

/// Reads a curve from CSV with columns x, y, z (optional header line).
SpaceCurve load_curve_csv(const std::string& path);

}  // namespace shapeholo
