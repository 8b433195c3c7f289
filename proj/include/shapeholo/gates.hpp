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

// Single-qubit gate loops and the two-qubit CZ/CNOT built from linking phases.

#pragma once

#include <array>
#include <vector>

#include "shapeholo/holonomy.hpp"
#include "shapeholo/linking.hpp"

namespace shapeholo {

/// Target π/2 phase gate diag(e^{−iπ/4}, e^{iπ/4}).
Mat2 phase_gate_target();
/// U_H = (1/√2)[[1, −1], [1, 1]], the y-rotation by π/2.
Mat2 hadamard_target();
/// Canonical Hadamard (1/√2)[[1, 1], [1, −1]].
Mat2 canonical_hadamard();

struct GateSpec {
  Mat2 target;
  HolonomyLoop loop;
  int repetitions = 1;
  Mat2 residual_abelian = Mat2::identity();  // U_z(2π) still to be compensated (identity when none)
  Mat2 realized = Mat2::identity();          // what the construction produces, repetitions included
  double steering_amplitude = 0.0;           // calibrated |ψ| (Hadamard only)
};

/// θ = θ0 + a cos s, φ = φ0 + (b / sin θ0) sin s. `orientation` −1 runs s → −s.
ShapeLoop make_ellipse_loop(double theta0, double phi0, double a, double b, int n, int orientation = +1);

/// Default repetition count: 1 while 1/√q ≤ 0.3, else ceil(1/(0.09 q)).
int default_repetitions(double q);

/// Pinned field, ψ = 0, N_rep loops of a = b = 1/√(q N_rep) about θ0 = π/2.
/// repetitions ≤ 0 selects default_repetitions(q).
GateSpec synth_phase_gate(double q, int repetitions = 0, int orientation = +1, int steps = 4096);

/// Interaction-picture factorization W = U_z(2π) V(2π) for pinned fields.
struct InteractionFrame {
  std::vector<Vec3> transverse;  // U_z⁻¹ 𝒜⊥ U_z at segment midpoints (coefficient vectors)
  std::vector<double> eta;       // η(s_k) = q ∫₀^{s_k} A at the nodes
  Mat2 abelian = Mat2::identity();  // U_z(2π)
  Mat2 v = Mat2::identity();        // V(2π)
};
InteractionFrame interaction_frame(const HolonomyLoop& loop);

/// Hadamard-type loop: Direct coupling, pinned field, a = b = 1/√q about θ0 = π/2,
/// arg ψ(s) = −π/2 − η(s), |ψ| calibrated by bisection so that V(2π) rotates by π/2.
GateSpec synth_hadamard_gate(double q, int steps = 4096);

/// Same construction with a fixed steering amplitude (no calibration).
GateSpec hadamard_loop(double q, double amplitude, int steps = 4096);

/// |Tr(u†v)| / dim.
double gate_fidelity(const Mat2& u, const Mat2& v);
double gate_fidelity(const CMatrix& u, const CMatrix& v);

struct TwoQubitGate {
  CMatrix matrix = CMatrix::identity(4);
  double phase = 0.0;
  int k = 1;
  /// (q_A, q_B) per basis state |00⟩, |01⟩, |10⟩, |11⟩ (A is the left tensor factor).
  std::array<std::array<double, 2>, 4> charges{};
};

/// diag(e^{iφ_00}, …, e^{iφ_11}) with φ_ab the Chern–Simons phase of the
/// charges carried by state |ab⟩ (0 for |0⟩, q for |1⟩).
TwoQubitGate cs_controlled_phase(double q, int k, int lk = 1, int slk = 0);

enum class CnotPath { Exact, Holonomy };

/// (1 ⊗ H_B) U_CZ (1 ⊗ H_B†) with H_B = U_H σz. The Holonomy path builds U_H
/// and σz from integrated loops. Throws ValidationError unless the CS phase is π.
TwoQubitGate compile_cnot(double q, int k, CnotPath path = CnotPath::Exact, int steps = 4096);

/// |0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ X.
CMatrix canonical_cnot();

}  // namespace shapeholo
