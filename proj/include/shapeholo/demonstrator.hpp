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

// Trimer operating point: adiabatic window, leakage, drive loops, error
// budget and the Ramsey/echo readout. Energies are angular frequencies (rad/s).

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "shapeholo/holonomy.hpp"
#include "shapeholo/shapespace.hpp"

namespace shapeholo {

struct PlatformParams {
  double E_A = kTwoPi * 20e6;
  double E_E1 = kTwoPi * (10e6 + 5e3);
  double E_E2 = kTwoPi * (10e6 - 5e3);
  double T_loop = 1e-6;   // s
  double tau_R = 50e-6;   // s
  double R0 = 1e-7;       // m
  double epsilon = 0.05;
  double phi = kPi / 2;   // rad, relative drive phase
  int N_rep = 10;
  double q = 100.0;
  double margin = 10.0;       // factor standing in for "≪"
  double contingency = 1.0;   // multiplicative factor on the total budget

  double delta_gap() const { return E_A - 0.5 * (E_E1 + E_E2); }
  double delta_E() const { return std::abs(E_E1 - E_E2); }
  void validate() const;
};

struct WindowCheck {
  double delta_gap = 0.0;
  double delta_E = 0.0;
  double ratio_lower = 0.0;  // (1/T_loop) / δE
  double ratio_upper = 0.0;  // Δgap · T_loop
  bool pass = false;
};

/// Throws ValidationError if Δgap ≤ 0.
WindowCheck adiabatic_window(const PlatformParams& p);

struct LeakageEstimate {
  double per_loop = 0.0;  // (1 / (T_loop Δgap))²
  double per_gate = 0.0;  // N_rep × per_loop
};
LeakageEstimate leakage_estimate(const PlatformParams& p);

struct DriveLoop {
  ShapeLoop loop = ShapeLoop::point(0.0, 0.0, 8);
  double solid_angle = 0.0;
  std::vector<double> apex_compensation;  // δR3(t_k) in metres
  double max_breathing = 0.0;             // max |ρ/ρ0 − 1|
};

/// δR1 = εR0 cos Ωt on ξ13, δR2 = εR0 cos(Ωt − φ) on ξ23, apex δR3 = −(δR1 + δR2)
/// on ξ12, about an equilateral triangle of side R0 with equal masses. φ is the
/// relative phase of the two bond drives; φ = π/2 gives δR2 = εR0 sin Ωt.
DriveLoop drive_to_loop(const PlatformParams& p, int samples = 1024);

struct ErrorBudget {
  double t_gate = 0.0;
  double p_leak = 0.0;
  double p_decay = 0.0;
  double phase_drift = 0.0;  // rad, before the echo
  double total_infidelity_estimate = 0.0;
};
ErrorBudget gate_budget(const PlatformParams& p);

struct FringePoint {
  double phase;
  double p0;
};

struct RamseyResult {
  std::array<std::vector<FringePoint>, 2> fringes;  // x- and y-preparation
  std::array<std::array<double, 3>, 3> echo_rotation{};  // SO(3) image of the echo operator
  double echo_angle = 0.0;       // rotation angle of the echo operator ∈ [0, π]
  double geometric_phase = 0.0;  // signed Θ of W, sign from the echo axis
  double trace_estimate = 0.0;   // 2 cos(Θ/2)
  double control_phase = 0.0;    // z-rotation of the no-echo sequence
  double fringe_contrast = 0.0;  // minimum over preparations
};

/// Simulates prep π/2 → W → D → X → W⁻¹ → D → π/2(ϕ) with D = exp(−iδE T σz/2),
/// fits the fringes and reconstructs the echo operator. Also runs the no-echo
/// control prep → W → D → π/2(ϕ).
RamseyResult ramsey_echo(const Mat2& w, double delta_E, double T_loop, int phase_points = 64);
RamseyResult ramsey_echo(const HolonomyLoop& loop, double delta_E, double T_loop, int phase_points = 64);

}  // namespace shapeholo
