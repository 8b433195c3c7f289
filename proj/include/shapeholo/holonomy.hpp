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

// Wilson lines along closed shape loops.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "shapeholo/shapespace.hpp"
#include "shapeholo/types.hpp"
#include "shapeholo/wz_connection.hpp"

namespace shapeholo {

struct WilsonLine {
  Mat2 matrix = Mat2::identity();
  double q = 1.0;

  /// Throws NumericalError unless U is unitary with unit determinant to `tol`.
  void validate(double tol = 1e-10) const;
};

/// A closed loop together with everything needed to transport a qubit along it.
/// The number of integration steps is the shape loop's segment count.
struct HolonomyLoop {
  ShapeLoop shape = ShapeLoop::point(kPi / 2, 0.0, 8);
  BlochField bloch = BlochField::pinned();
  ControlField control = ControlField::zero();
  double q = 1.0;
  TransverseCoupling coupling = TransverseCoupling::Geometric;
  GaugePatch patch = GaugePatch::North;
  /// Extra abelian term along n per unit loop parameter (gauge shifts). Empty means zero.
  std::function<double(double)> abelian_offset;

  int steps() const { return shape.segments(); }
  void validate() const;
  /// Same loop traversed backwards; control data are transformed so that the
  /// result is the inverse Wilson line.
  HolonomyLoop reversed() const;
  /// Connection coefficient vector at the midpoint of segment k.
  Vec3 midpoint_vector(int k) const;
};

/// Ordered product E_{N−1} ⋯ E_0 with E_k = exp(−q 𝒜(s_k+½) Δs).
WilsonLine integrate_wilson(const HolonomyLoop& loop);

/// Re Tr W; throws NumericalError if |Im Tr W| ≥ 1e-8.
double holonomy_trace(const HolonomyLoop& loop);

struct TraceExpansion {
  double abelian_angle = 0.0;      // half the accumulated diagonal phase
  std::vector<cplx> corrections;   // I₂ (and I₄ at order 4)
  double trace_estimate = 0.0;     // 2 Re[e^{i·abelian_angle}(1 − I₂ + I₄)]
};

/// Perturbative trace: the diagonal part of the transport generator in the
/// north-regular Bloch frame is integrated exactly, the transverse part by
/// iterating the Dyson equation to `order` ∈ {2, 4} in |ψ|.
/// Throws NumericalError if |I₂| ≥ 0.5.
TraceExpansion dyson_trace(const HolonomyLoop& loop, int order = 2);

/// Θ = 2 arccos(Re Tr W / 2) ∈ [0, 2π].
double rotation_angle(const WilsonLine& w);
double rotation_angle(const Mat2& w);

/// 2 (Ī/T) arccos(trace/2) with Ī the time-averaged Σ m d⊥² about the
/// averaged plane normal through the centroid. `trajectory` is uniformly
/// sampled over one period, endpoints included.
double effective_angular_momentum(std::span<const TriangleConfig> trajectory, double loop_trace, double period);

/// U(1) rotation ψ → e^{iα}ψ with the compensating shift of the abelian term:
/// A → A − α'/q (Direct) or A → A + α'/q (Geometric).
HolonomyLoop gauge_rotate(const HolonomyLoop& loop, std::function<double(double)> alpha,
                          std::function<double(double)> dalpha);

}  // namespace shapeholo
