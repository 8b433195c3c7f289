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

// Triangle configurations, Jacobi coordinates, the preshape 3-sphere and
// Kendall's shape sphere.
//
// Coordinates on the shape sphere are (colatitude ϑ, azimuth φ). A triangle
// maps to the sphere through mass-weighted Jacobi vectors packed as complex
// numbers (z1, z2), the preshape Z = ρ (cos ϑ/2 e^{iφ1}, sin ϑ/2 e^{iφ2}),
// and the Hopf projection φ = φ2 − φ1.

#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "shapeholo/types.hpp"

namespace shapeholo {

/// Monopole patch: North is regular at ϑ = 0 and excludes ϑ = π; South the reverse.
enum class GaugePatch { North, South };

/// Three point masses with the mass-weighted centroid at the origin.
struct TriangleConfig {
  std::array<Vec3, 3> vertices{};
  std::array<double, 3> masses{1.0, 1.0, 1.0};

  /// Shifts `vertices` so that Σ m r = 0 and validates the result.
  static TriangleConfig centered(const std::array<Vec3, 3>& vertices, const std::array<double, 3>& masses);

  double total_mass() const { return masses[0] + masses[1] + masses[2]; }
  /// Largest vertex distance from the origin; the configuration's length scale.
  double length_scale() const;
  /// Σ m |r|².
  double mass_weighted_size() const;
  /// Throws ValidationError on non-finite data, non-positive masses or an off-center centroid.
  void validate() const;
};

struct JacobiPair {
  cplx z1;
  cplx z2;
};

struct PreshapePoint {
  double size = 0.0;        // ρ_pre = sqrt(|z1|² + |z2|²)
  double colatitude = 0.0;  // ϑ ∈ [0, π]
  double phi1 = 0.0;        // arg z1 ∈ [0, 2π)
  double phi2 = 0.0;        // arg z2 ∈ [0, 2π)

  JacobiPair reconstruct() const;
  double internal_phase() const;  // φ = φ2 − φ1 (mod 2π)
  double external_phase() const;  // χ = −(φ1 + φ2)/2
};

struct ShapePoint {
  double colatitude = 0.0;  // ϑ ∈ [0, π]
  double azimuth = 0.0;     // φ ∈ [0, 2π)
  bool pole = false;        // azimuth is meaningless at ϑ ∈ {0, π}

  /// Unit vector on the sphere.
  Vec3 unit() const;
};

/// Mass-weighted Jacobi coordinates. Weights are the reduced masses
/// μ1 = m1 m2/(m1+m2) and μ2 = (m1+m2) m3/M, so |z1|² + |z2|² = Σ m |r|².
/// Configurations off the z = 0 plane are expressed in the plane spanned by
/// their three vertices (basis e1 ∥ r2 − r1).
JacobiPair to_jacobi(const TriangleConfig& config);

PreshapePoint to_preshape(const JacobiPair& j);

ShapePoint hopf_project(const PreshapePoint& p);

/// to_jacobi → to_preshape → hopf_project.
ShapePoint shape_of(const TriangleConfig& config);

/// Places a triangle with the given side lengths in the canonical body frame:
/// vertex 1 → 2 along +x, vertex 3 in the upper half plane, centroid at the origin.
/// Throws ValidationError if the triangle inequality fails by less than `margin`.
TriangleConfig triangle_from_sides(double xi12, double xi13, double xi23, const std::array<double, 3>& masses,
                                   double margin = 1e-9);

/// Wraps an angle into (−π, π].
double wrap_pi(double angle);
/// Wraps an angle into [0, 2π).
double wrap_two_pi(double angle);

/// A closed loop on the shape sphere stored as N + 1 uniformly spaced samples
/// s_k = 2πk/N with the azimuth unwrapped by continuity. The last sample
/// repeats the first (up to a 2π multiple of the azimuth). Interpolation is
/// piecewise linear in (ϑ, unwrapped φ).
class ShapeLoop {
 public:
  struct Node {
    double colatitude;
    double azimuth;  // unwrapped
  };

  /// `samples` holds N + 1 (ϑ, φ) pairs with arbitrary azimuth branches.
  static ShapeLoop from_samples(std::span<const std::pair<double, double>> samples, int orientation = +1);
  /// Samples `f(s)` on N + 1 points of [0, 2π]; `f` returns (ϑ, φ).
  static ShapeLoop from_function(const std::function<std::pair<double, double>(double)>& f, int n,
                                 int orientation = +1);
  /// Constant loop at a single point.
  static ShapeLoop point(double colatitude, double azimuth, int n);

  int segments() const { return static_cast<int>(nodes_.size()) - 1; }
  double spacing() const { return kTwoPi / segments(); }
  int orientation() const { return orientation_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
  /// Net azimuth winding (integer number of turns).
  int winding() const;

  /// Interpolated (ϑ, unwrapped φ) at s ∈ [0, 2π].
  Node at(double s) const;
  /// Segment midpoint and constant tangent (dϑ/ds, dφ/ds) of segment k.
  Node midpoint(int k) const;
  std::pair<double, double> tangent(int k) const;

  /// Same geometric loop traversed backwards (s → 2π − s).
  ShapeLoop reversed() const;

  double min_colatitude() const;
  double max_colatitude() const;

 private:
  ShapeLoop(std::vector<Node> nodes, int orientation);
  std::vector<Node> nodes_;
  int orientation_ = +1;
};

/// Signed solid angle ∮(1 − cos ϑ) dφ (North) or ∮(−1 − cos ϑ) dφ (South),
/// trapezoid rule over the loop samples.
double solid_angle(const ShapeLoop& loop, GaugePatch patch = GaugePatch::North);

/// Throws ValidationError if the loop reaches the pole excluded by `patch`
/// (within `tol` of it).
void check_patch(const ShapeLoop& loop, GaugePatch patch, double tol = 1e-6);

}  // namespace shapeholo
