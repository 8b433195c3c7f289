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

// Oracles shared by the test executables.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "shapeholo/wz_connection.hpp"

namespace shapeholo::testing {

/// Smooth field with μ confined to (0.25, 2.9) so the north Bloch patch is valid.
inline BlochField random_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c1 = 0.6 * u(rng), c2 = u(rng), c3 = 0.5 * u(rng), c4 = 0.4 * u(rng), c5 = 0.3 * u(rng);
  return BlochField::analytic(
      [=](double th, double ph) { return ph + c1 * std::sin(th + c2) + c3 * std::cos(ph); },
      [=](double th, double ph) { return 1.5 + 0.6 * std::sin(th - 0.4 + c4) + c5 * std::sin(ph + c2); });
}

/// Eigenvalues of a symmetric 3×3 matrix (cyclic Jacobi), ascending.
inline std::array<double, 3> symmetric_eigenvalues(std::array<std::array<double, 3>, 3> a) {
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off < 1e-300) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Signed solid angle of a closed spherical polygon (unit vectors, first ≠ last),
/// fan-triangulated from its normalized centroid (Van Oosterom–Strackee).
inline double polygon_solid_angle(const std::vector<Vec3>& pts) {
  Vec3 c{};
  for (const auto& p : pts) c += p;
  c = c / norm(c);
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3& a = pts[i];
    const Vec3& b = pts[(i + 1) % pts.size()];
    const double num = dot(c, cross(a, b));
    const double den = 1.0 + dot(c, a) + dot(a, b) + dot(b, c);
    total += 2.0 * std::atan2(num, den);
  }
  return total;
}

inline double max_abs(const Mat2& m) {
  double e = 0.0;
  for (const auto& x : m.m) e = std::max(e, std::abs(x));
  return e;
}

}  // namespace shapeholo::testing
