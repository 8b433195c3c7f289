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

// Classical vibrating trimer: rotation at zero angular momentum.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "shapeholo/shapespace.hpp"

namespace shapeholo {

struct BondDrive {
  double d12 = 1.1, a12 = 0.2, omega12 = 1.0;  // bond 1–2
  double d = 1.0, a = 0.15, omega = 3.0;       // bonds 1–3 and 2–3
  double phi13 = kPi / 4, phi23 = -kPi / 4;

  void validate() const;
  /// Shortest T with both Ω T and Ω12 T multiples of 2π (ratio rational with
  /// denominator ≤ 64); nullopt otherwise.
  std::optional<double> common_period() const;
  /// Standard operating point (d = 1, a = 0.15, d12 = 1.1, a12 = 0.2, Ω = 3 Ω12) with φ13 = −φ23 = φ/2.
  static BondDrive standard(double phi = kPi / 2);
};

inline constexpr std::array<double, 3> kStandardMasses{2.1, 2.1, 4.7};

struct Bonds {
  double xi12, xi13, xi23;
};

Bonds bond_lengths(double t, const BondDrive& drive);

/// Canonical body frame: 1 → 2 along +x, vertex 3 above, centroid at the origin.
TriangleConfig shape_from_bonds(const Bonds& bonds, const std::array<double, 3>& masses);

struct TrimerTrajectory {
  std::vector<double> times;
  std::vector<Bonds> bonds;
  std::vector<TriangleConfig> body_configs;
  std::vector<double> theta;             // lab rotation angle
  std::vector<double> theta_rate;        // θ̇
  std::vector<TriangleConfig> lab_configs;
  std::vector<double> lab_angular_momentum;  // about the normal, from kinematic lab velocities
  double angular_momentum_scale = 1.0;       // m d² Ω

  double max_relative_angular_momentum() const;
};

/// Integrates θ̇ = −L_body / I with central-difference body velocities and
/// trapezoid quadrature. dt is adjusted down so that it divides t_end; it
/// must resolve ≥ 64 steps per fastest period.
TrimerTrajectory reconstruct_rotation(const BondDrive& drive, const std::array<double, 3>& masses, double t_end,
                                      double dt);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line θ ≈ slope·t + intercept over samples with t ≥ from_fraction·t_end.
LinearFit late_time_fit(const TrimerTrajectory& traj, double from_fraction = 0.5);

struct SweepPoint {
  double phi;   // φ13 − φ23
  double rate;  // θ(T_M) / T_M
};

/// φ13 = −φ23 = φ/2 for each grid value; M common periods at `steps_per_period`.
/// Runs on up to `threads` workers; results are in grid order.
std::vector<SweepPoint> phase_sweep(const BondDrive& drive_template, const std::array<double, 3>& masses,
                                    const std::vector<double>& phi_grid, int periods = 4, int steps_per_period = 1024,
                                    int threads = 1);

/// Enclosed area of the (ξ13 − d, ξ23 − d) precession over one cycle divided
/// by a²; requires φ13 − φ23 = ±π/2 (mod 2π).
double precession_berry_phase(double d, double a, double omega, double phi13 = kPi / 4, double phi23 = -kPi / 4);

struct EffectiveLSample {
  double t_start;
  double value;
};

/// L_eff over sliding one-period windows (start advanced by `stride` samples),
/// trace from the pinned q = 1 holonomy of each window's shape loop.
std::vector<EffectiveLSample> effective_L_timeseries(const TrimerTrajectory& traj, double period, int stride = 0);

}  // namespace shapeholo
