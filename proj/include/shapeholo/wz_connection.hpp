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

// The SU(2) connection on the shape sphere.
//
// All su(2) values are stored as real 3-vectors v meaning v·σ/(2i). Tangents
// are (dϑ/ds, dφ/ds) pairs; every one-form is returned already contracted
// with the tangent.

#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "shapeholo/shapespace.hpp"
#include "shapeholo/types.hpp"

namespace shapeholo {

using Tangent = std::pair<double, double>;  // (dϑ/ds, dφ/ds)

/// Bloch-vector field n(ϑ, φ) = (cos λ sin μ, sin λ sin μ, cos μ).
class BlochField {
 public:
  using AngleFn = std::function<double(double colatitude, double azimuth)>;

  /// n ≡ ẑ everywhere.
  static BlochField pinned();
  /// Spherical angles λ(ϑ, φ), μ(ϑ, φ). Both callables must be reentrant and
  /// 2π-periodic in φ; partial derivatives are taken by central differences.
  static BlochField analytic(AngleFn lambda, AngleFn mu);
  /// λ = φ, μ = ϑ: the identity map of the sphere.
  static BlochField radial();

  bool is_pinned() const { return !lambda_; }

  struct Geometry {
    Vec3 n;        // unit axis
    Vec3 dn;       // dn/ds along the tangent
    Vec3 e1;       // ∂n/∂μ
    Vec3 e2;       // ∂n/∂λ / sin μ
    double lambda = 0.0;
    double mu = 0.0;
    double dlambda = 0.0;  // dλ/ds
    double dmu = 0.0;      // dμ/ds
  };

  Geometry evaluate(double colatitude, double azimuth, Tangent tangent) const;

 private:
  AngleFn lambda_;
  AngleFn mu_;
};

/// Complex control ψ(s) = Re ψ + i Im ψ along the loop parameter s ∈ [0, 2π].
class ControlField {
 public:
  static ControlField zero();
  static ControlField constant(cplx value);
  static ControlField function(std::function<cplx(double)> f);
  /// N + 1 node values at s_k = 2πk/N, linear interpolation of Re and Im.
  static ControlField sampled(std::vector<cplx> nodes);

  cplx operator()(double s) const;
  /// |ψ(0) − ψ(2π)| < tol.
  bool periodic(double tol = 1e-10) const;
  /// ψ(s) ↦ ψ(2π − s) · factor.
  ControlField reversed(cplx factor = 1.0) const;
  /// ψ(s) ↦ e^{iα(s)} ψ(s).
  ControlField rotated(std::function<double(double)> alpha) const;

 private:
  std::shared_ptr<const std::function<cplx(double)>> f_;
};

/// How ψ enters the transverse part of the connection.
///  - Geometric: (Re ψ dn + Im ψ dn×n)·σ/2i, a one-form through dn.
///  - Direct:    (Re ψ e1 + Im ψ e2)·σ/2i per unit loop parameter; for the
///               pinned field this is Re ψ σx/2i + Im ψ σy/2i.
enum class TransverseCoupling { Geometric, Direct };

/// Guichardet potential contracted with the tangent.
/// North: A = −½(1 − cos ϑ) dφ;  South: A = ½(1 + cos ϑ) dφ.
double guichardet_A(double colatitude, Tangent tangent, GaugePatch patch);

struct BlochAxis {
  Vec3 n;
  Vec3 dn;
};
BlochAxis bloch_axis(const BlochField& field, const ShapePoint& point, Tangent tangent);

/// Unit-monopole potential of the Bloch map, same convention as A:
/// North ω = −½(1 − cos μ) dλ, South ω = ½(1 + cos μ) dλ. Zero for the pinned field.
double omega_form(const BlochField& field, double colatitude, double azimuth, Tangent tangent,
                  GaugePatch bloch_patch = GaugePatch::North);

struct ConnectionSample {
  Mat2 full;         // 𝒜(tangent), traceless anti-Hermitian
  Vec3 vector;       // full = vector·σ/2i
  double A = 0.0;    // Guichardet part
  double omega = 0.0;
  double abelian = 0.0;  // C = A + ω
  cplx transverse;       // J: σ⁺ coefficient of the ψ-dependent part in the (e1, e2, n) frame
  cplx cho;              // σ⁺ coefficient of the dn×n part in the same frame
};

struct ConnectionOptions {
  TransverseCoupling coupling = TransverseCoupling::Geometric;
  GaugePatch patch = GaugePatch::North;        // patch for A
  GaugePatch bloch_patch = GaugePatch::North;  // patch for ω
  double abelian_offset = 0.0;                 // added to A along n (gauge shifts)
};

/// Coefficient vector of 𝒜 = (A n + dn×n)·σ/2i + transverse(ψ) along the tangent.
Vec3 connection_vector(double colatitude, double azimuth, Tangent tangent, const BlochField& field, cplx psi,
                       const ConnectionOptions& options = {});

ConnectionSample wz_connection(double colatitude, double azimuth, Tangent tangent, const BlochField& field,
                               cplx psi, const ConnectionOptions& options = {});

/// SU(2) frame R with R σx R† = e1·σ, R σy R† = e2·σ, R σz R† = n·σ.
Mat2 bloch_frame(double lambda, double mu);

/// Gradient of ψ on the shape sphere: (∂ψ/∂ϑ, ∂ψ/∂φ).
using PsiGradient = std::pair<cplx, cplx>;

/// ϑφ-component of the field strength F = d𝒜 + 𝒜∧𝒜 for Geometric coupling
/// (ψ treated as a field on the sphere with the given gradient).
Mat2 curvature(double colatitude, double azimuth, const BlochField& field, cplx psi, PsiGradient dpsi,
               GaugePatch patch = GaugePatch::North);

}  // namespace shapeholo
