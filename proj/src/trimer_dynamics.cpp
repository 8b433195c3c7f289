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

#include "shapeholo/trimer_dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <span>
#include <thread>

#include "shapeholo/error.hpp"
#include "shapeholo/holonomy.hpp"

namespace shapeholo {

void BondDrive::validate() const {
  const double all[] = {d12, a12, omega12, d, a, omega, phi13, phi23};
  for (double v : all)
    if (!std::isfinite(v)) throw ValidationError("BondDrive: non-finite parameter");
  if (!(d12 > 0.0) || !(d > 0.0)) throw ValidationError("BondDrive: mean bond lengths must be positive");
  if (a12 < 0.0 || a < 0.0 || !(a12 < d12) || !(a < d)) throw ValidationError("BondDrive: amplitudes must lie in [0, mean)");
  if (!(omega12 > 0.0) || !(omega > 0.0)) throw ValidationError("BondDrive: frequencies must be positive");
}

std::optional<double> BondDrive::common_period() const {
  validate();
  const double ratio = omega / omega12;
  for (int den = 1; den <= 64; ++den) {
    const double num = std::round(ratio * den);
    if (num >= 1.0 && std::abs(ratio * den - num) < 1e-12 * std::max(1.0, num)) return kTwoPi * den / omega12;
  }
  return std::nullopt;
}

BondDrive BondDrive::standard(double phi) {
  BondDrive b;
  b.phi13 = 0.5 * phi;
  b.phi23 = -0.5 * phi;
  return b;
}

Bonds bond_lengths(double t, const BondDrive& drive) {
  return {drive.d12 + drive.a12 * std::cos(drive.omega12 * t), drive.d + drive.a * std::cos(drive.omega * t + drive.phi13),
          drive.d + drive.a * std::cos(drive.omega * t + drive.phi23)};
}

TriangleConfig shape_from_bonds(const Bonds& bonds, const std::array<double, 3>& masses) {
  return triangle_from_sides(bonds.xi12, bonds.xi13, bonds.xi23, masses, 1e-9);
}

double TrimerTrajectory::max_relative_angular_momentum() const {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < lab_angular_momentum.size(); ++k)
    worst = std::max(worst, std::abs(lab_angular_momentum[k]) / angular_momentum_scale);
  return worst;
}

namespace {

double planar_cross(const Vec3& r, const Vec3& v) { return r.x * v.y - r.y * v.x; }

}  // namespace

TrimerTrajectory reconstruct_rotation(const BondDrive& drive, const std::array<double, 3>& masses, double t_end,
                                      double dt) {
  drive.validate();
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("reconstruct_rotation: masses must be positive");
  if (!(t_end > 0.0) || !(dt > 0.0) || !std::isfinite(t_end + dt))
    throw ValidationError("reconstruct_rotation: t_end and dt must be positive");
  const double fastest = kTwoPi / std::max(drive.omega, drive.omega12);
  if (dt > fastest / 64.0 * (1.0 + 1e-12))
    throw ValidationError("reconstruct_rotation: dt must resolve at least 64 steps per fastest period");
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  if (steps < 2) throw ValidationError("reconstruct_rotation: need at least two steps");
  const double h = t_end / static_cast<double>(steps);

  TrimerTrajectory tr;
  const std::size_t n = steps + 1;
  tr.times.resize(n);
  tr.bonds.resize(n);
  tr.body_configs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = h * static_cast<double>(k);
    tr.times[k] = t;
    tr.bonds[k] = bond_lengths(t, drive);
    try {
      tr.body_configs[k] = shape_from_bonds(tr.bonds[k], masses);
    } catch (const ValidationError& e) {
      char buf[96];
      std::snprintf(buf, sizeof buf, " (at t = %.9g)", t);
      throw ValidationError(std::string(e.what()) + buf);
    }
  }

  // Body-frame velocities: central differences, second-order one-sided at the ends.
  auto velocity = [&](std::size_t k, std::size_t i) {
    const auto& c = tr.body_configs;
    if (k == 0) return (c[1].vertices[i] * 4.0 - c[0].vertices[i] * 3.0 - c[2].vertices[i]) / (2.0 * h);
    if (k == n - 1)
      return (c[n - 1].vertices[i] * 3.0 - c[n - 2].vertices[i] * 4.0 + c[n - 3].vertices[i]) / (2.0 * h);
    return (c[k + 1].vertices[i] - c[k - 1].vertices[i]) / (2.0 * h);
  };

  tr.theta.assign(n, 0.0);
  tr.theta_rate.assign(n, 0.0);
  tr.lab_angular_momentum.assign(n, 0.0);
  tr.lab_configs.resize(n);
  std::vector<std::array<Vec3, 3>> vel(n);
  for (std::size_t k = 0; k < n; ++k) {
    double l_body = 0.0, inertia = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec3& r = tr.body_configs[k].vertices[i];
      vel[k][i] = velocity(k, i);
      l_body += masses[i] * planar_cross(r, vel[k][i]);
      inertia += masses[i] * (r.x * r.x + r.y * r.y);
    }
    tr.theta_rate[k] = -l_body / inertia;
    if (k > 0) tr.theta[k] = tr.theta[k - 1] + 0.5 * h * (tr.theta_rate[k] + tr.theta_rate[k - 1]);
  }

  tr.angular_momentum_scale = (masses[0] + masses[1] + masses[2]) * drive.d * drive.d * std::max(drive.omega, drive.omega12);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = std::cos(tr.theta[k]), s = std::sin(tr.theta[k]);
    auto rot = [c, s](const Vec3& v) { return Vec3{c * v.x - s * v.y, s * v.x + c * v.y, v.z}; };
    TriangleConfig lab = tr.body_configs[k];
    double l_lab = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec3& r = tr.body_configs[k].vertices[i];
      const Vec3 v = vel[k][i] + Vec3{-r.y, r.x, 0.0} * tr.theta_rate[k];
      lab.vertices[i] = rot(r);
      l_lab += masses[i] * planar_cross(lab.vertices[i], rot(v));
    }
    tr.lab_configs[k] = lab;
    tr.lab_angular_momentum[k] = l_lab;
  }
  if (tr.max_relative_angular_momentum() > 1e-8)
    throw NumericalError("reconstruct_rotation: zero angular momentum constraint violated; reduce dt");
  return tr;
}

LinearFit late_time_fit(const TrimerTrajectory& traj, double from_fraction) {
  if (traj.times.size() < 3 || !(from_fraction >= 0.0 && from_fraction < 1.0))
    throw ValidationError("late_time_fit: need a trajectory and a fraction in [0, 1)");
  const double t0 = from_fraction * traj.times.back();
  double n = 0.0, st = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    if (traj.times[k] >= t0) {
      n += 1.0;
      st += traj.times[k];
      sy += traj.theta[k];
    }
  if (n < 3.0) throw ValidationError("late_time_fit: too few samples in the fit window");
  const double mt = st / n, my = sy / n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    if (traj.times[k] >= t0) {
      const double dt = traj.times[k] - mt, dy = traj.theta[k] - my;
      stt += dt * dt;
      sty += dt * dy;
      syy += dy * dy;
    }
  LinearFit f;
  f.slope = sty / stt;
  f.intercept = my - f.slope * mt;
  f.r2 = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  return f;
}

std::vector<SweepPoint> phase_sweep(const BondDrive& drive_template, const std::array<double, 3>& masses,
                                    const std::vector<double>& phi_grid, int periods, int steps_per_period,
                                    int threads) {
  const auto period = drive_template.common_period();
  if (!period) throw ValidationError("phase_sweep: drive frequencies are not commensurate");
  if (periods < 1 || steps_per_period < 8) throw ValidationError("phase_sweep: need periods ≥ 1 and steps ≥ 8");
  for (double phi : phi_grid)
    if (!(phi >= -kPi - 1e-12 && phi <= kPi + 1e-12)) throw ValidationError("phase_sweep: grid must lie in [-pi, pi]");

  std::vector<SweepPoint> out(phi_grid.size());
  std::vector<std::exception_ptr> errors(phi_grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < phi_grid.size(); i = next++) {
      try {
        BondDrive d = drive_template;
        d.phi13 = 0.5 * phi_grid[i];
        d.phi23 = -0.5 * phi_grid[i];
        const double t_end = *period * periods;
        const auto tr = reconstruct_rotation(d, masses, t_end, *period / steps_per_period);
        out[i] = {phi_grid[i], tr.theta.back() / t_end};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, phi_grid.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

double precession_berry_phase(double d, double a, double omega, double phi13, double phi23) {
  if (!(d > 0.0) || !(a > 0.0) || !(a < d) || !(omega > 0.0)) throw ValidationError("precession_berry_phase: need 0 < a < d, omega > 0");
  if (std::abs(std::abs(wrap_pi(phi13 - phi23)) - kPi / 2) > 1e-9)
    throw ValidationError("precession_berry_phase: drive is not circular (need phi13 - phi23 = ±pi/2)");
  // ½∮(x dy − y dx) with x = ξ13 − d, y = ξ23 − d; the trapezoid rule is spectrally accurate here.
  const int n = 256;
  const double period = kTwoPi / omega;
  double area = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = period * k / n;
    const double x = a * std::cos(omega * t + phi13), y = a * std::cos(omega * t + phi23);
    const double dx = -a * omega * std::sin(omega * t + phi13), dy = -a * omega * std::sin(omega * t + phi23);
    area += 0.5 * (x * dy - y * dx) * (period / n);
  }
  return area / (a * a);
}

std::vector<EffectiveLSample> effective_L_timeseries(const TrimerTrajectory& traj, double period, int stride) {
  if (!(period > 0.0)) throw ValidationError("effective_L_timeseries: period must be positive");
  if (traj.times.size() < 2) throw ValidationError("effective_L_timeseries: empty trajectory");
  const double h = traj.times[1] - traj.times[0];
  const double ratio = period / h;
  const auto per = static_cast<std::size_t>(std::llround(ratio));
  if (per < 8 || std::abs(ratio - static_cast<double>(per)) > 1e-6 * ratio)
    throw ValidationError("effective_L_timeseries: period must be a multiple of the time step");
  if (traj.times.size() < per + 1) throw ValidationError("effective_L_timeseries: trajectory shorter than one period");
  const std::size_t step = stride > 0 ? static_cast<std::size_t>(stride) : std::max<std::size_t>(1, per / 8);

  std::vector<std::pair<double, double>> shape(traj.body_configs.size());
  for (std::size_t k = 0; k < shape.size(); ++k) {
    const auto p = shape_of(traj.body_configs[k]);
    shape[k] = {p.colatitude, p.azimuth};
  }

  std::vector<EffectiveLSample> out;
  for (std::size_t s = 0; s + per < traj.times.size(); s += step) {
    HolonomyLoop loop;
    std::vector<std::pair<double, double>> window(shape.begin() + static_cast<std::ptrdiff_t>(s),
                                                  shape.begin() + static_cast<std::ptrdiff_t>(s + per + 1));
    window.back() = window.front();  // the drive is periodic; remove rounding noise
    loop.shape = ShapeLoop::from_samples(window);
    loop.patch = loop.shape.max_colatitude() < kPi - 1e-3 ? GaugePatch::North : GaugePatch::South;
    const double trace = holonomy_trace(loop);
    const std::span<const TriangleConfig> configs(traj.lab_configs.data() + s, per + 1);
    out.push_back({traj.times[s], effective_angular_momentum(configs, trace, period)});
  }
  return out;
}

}  // namespace shapeholo
