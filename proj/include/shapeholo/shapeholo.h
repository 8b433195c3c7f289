/*
 * Copyright 2026 The Shapeholo Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * Stable C interface to the shapeholo library.
 *
 * Every fallible call returns an sh_status. On failure the message is
 * available from sh_last_error() on the same thread until the next call.
 * Objects are opaque handles released with the matching *_free function;
 * passing NULL to a *_free function is a no-op. Output pointers are written
 * only on success.
 */

#ifndef SHAPEHOLO_H
#define SHAPEHOLO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sh_status {
  SH_OK = 0,
  SH_ERR_INVALID_ARGUMENT = 1, /* NULL pointer, too-small buffer */
  SH_ERR_VALIDATION = 2,       /* precondition on the inputs failed */
  SH_ERR_NUMERICAL = 3,        /* a runtime invariant check failed */
  SH_ERR_IO = 4,
  SH_ERR_INTERNAL = 5
} sh_status;

typedef struct sh_complex {
  double re;
  double im;
} sh_complex;

const char* sh_version(void);
const char* sh_last_error(void);
const char* sh_status_name(sh_status status);

/* ---- Holonomy loops ---------------------------------------------------- */

typedef struct sh_loop sh_loop;

enum { SH_COUPLING_GEOMETRIC = 0, SH_COUPLING_DIRECT = 1 };

/* Elliptical shape loop around (theta0, phi0) with semi-axes a (colatitude)
 * and b (arc length along the azimuth); pinned Bloch field, zero control. */
sh_status sh_loop_ellipse(double theta0, double phi0, double a, double b, int steps, int orientation, double q,
                          sh_loop** out);
/* Closed polyline of (colatitude, azimuth) pairs; the last point must equal the first. */
sh_status sh_loop_from_samples(const double* colatitude_azimuth, size_t count, double q, sh_loop** out);
sh_status sh_loop_set_control(sh_loop* loop, sh_complex psi);
sh_status sh_loop_set_coupling(sh_loop* loop, int coupling);
sh_status sh_loop_reversed(const sh_loop* loop, sh_loop** out);
/* Row-major 2x2 Wilson line. */
sh_status sh_loop_wilson(const sh_loop* loop, sh_complex out[4]);
sh_status sh_loop_trace(const sh_loop* loop, double* out);
/* order is 2 or 4 */
sh_status sh_loop_dyson_trace(const sh_loop* loop, int order, double* out);
sh_status sh_loop_solid_angle(const sh_loop* loop, double* out);
void sh_loop_free(sh_loop* loop);

/* ---- Gates ------------------------------------------------------------- */

typedef struct sh_gate sh_gate;

enum { SH_CNOT_EXACT = 0, SH_CNOT_HOLONOMY = 1 };

/* repetitions = 0 selects the default for q. */
sh_status sh_gate_phase(double q, int repetitions, int orientation, int steps, sh_gate** out);
sh_status sh_gate_hadamard(double q, int steps, sh_gate** out);
sh_status sh_gate_cnot(double q, int k, int path, int steps, sh_gate** out);
int sh_gate_dim(const sh_gate* gate);
/* Row-major dim*dim realized matrix; capacity counts sh_complex entries. */
sh_status sh_gate_matrix(const sh_gate* gate, sh_complex* out, size_t capacity);
sh_status sh_gate_target(const sh_gate* gate, sh_complex* out, size_t capacity);
/* |Tr(U^dagger V)| / dim against the target; global-phase invariant */
sh_status sh_gate_fidelity(const sh_gate* gate, double* out);
/* Loop repetitions and steering amplitude |psi| (single-qubit gates only). */
sh_status sh_gate_info(const sh_gate* gate, int* repetitions, double* steering_amplitude);
void sh_gate_free(sh_gate* gate);

/* Chern-Simons phase of two charges q at level k. */
sh_status sh_cs_phase(double q, int k, int lk, int slk, double* out);

/* ---- Curves and linking ------------------------------------------------ */

typedef struct sh_curve sh_curve;

/* xyz holds 3*count doubles. closed != 0 means the last point repeats the first. */
sh_status sh_curve_from_points(const double* xyz, size_t count, int closed, sh_curve** out);
sh_status sh_curve_load_csv(const char* path, sh_curve** out);
sh_status sh_hopf_pair(double r1, double r2, int samples, sh_curve** first, sh_curve** second);
sh_status sh_linking_number(const sh_curve* a, const sh_curve* b, int* lk, double* raw);
void sh_curve_free(sh_curve* curve);

/* ---- Vibrating trimer -------------------------------------------------- */

typedef struct sh_drive {
  double d12, a12, omega12; /* bond 1-2 */
  double d, a, omega;       /* bonds 1-3 and 2-3 */
  double phi13, phi23;
} sh_drive;

/* Standard operating point (d = 1, a = 0.15, d12 = 1.1, a12 = 0.2, omega = 3 omega12)
 * with phi13 = -phi23 = phi / 2. */
void sh_drive_standard(double phi, sh_drive* out);
/* Masses 2.1, 2.1, 4.7 */
void sh_standard_masses(double out[3]);

typedef struct sh_trajectory sh_trajectory;

sh_status sh_trimer_simulate(const sh_drive* drive, const double masses[3], int periods, int steps_per_period,
                             sh_trajectory** out);
size_t sh_trajectory_size(const sh_trajectory* traj);
sh_status sh_trajectory_period(const sh_trajectory* traj, double* out);
/* bonds receives (xi12, xi13, xi23); any output may be NULL. */
sh_status sh_trajectory_sample(const sh_trajectory* traj, size_t index, double* t, double* theta, double bonds[3]);
sh_status sh_trajectory_fit(const sh_trajectory* traj, double from_fraction, double* slope, double* intercept,
                            double* r2);
sh_status sh_trajectory_max_invariant(const sh_trajectory* traj, double* out);
/* Sliding one-period windows; stride 0 picks period/8. Writes up to capacity
 * values and the total number available to *count. */
sh_status sh_trajectory_effective_L(const sh_trajectory* traj, int stride, double* out, size_t capacity,
                                    size_t* count);
void sh_trajectory_free(sh_trajectory* traj);

sh_status sh_phase_sweep(const sh_drive* drive, const double masses[3], const double* phi, size_t count, int periods,
                         int steps_per_period, int threads, double* rates);
sh_status sh_berry_phase(double d, double a, double omega, double phi13, double phi23, double* out);

/* ---- Demonstrator ------------------------------------------------------ */

typedef struct sh_platform {
  double E_A, E_E1, E_E2; /* rad/s */
  double T_loop, tau_R;   /* s */
  double R0;              /* m */
  double epsilon, phi;
  int N_rep;
  double q;
  double margin, contingency;
} sh_platform;

void sh_platform_defaults(sh_platform* out);

typedef struct sh_budget {
  double delta_gap, delta_E;
  double ratio_lower, ratio_upper;
  int window_pass;
  double leak_per_loop, leak_per_gate;
  double t_gate, p_decay, phase_drift, total_infidelity;
} sh_budget;

sh_status sh_demo_budget(const sh_platform* params, sh_budget* out);
sh_status sh_drive_solid_angle(const sh_platform* params, int samples, double* solid_angle, double* max_breathing);

typedef struct sh_ramsey {
  double trace_estimate;
  double geometric_phase;
  double echo_angle;
  double control_phase;
  double fringe_contrast;
} sh_ramsey;

sh_status sh_ramsey_echo(const sh_complex w[4], double delta_E, double T_loop, int phase_points, sh_ramsey* out);

/* ---- Scenario runner --------------------------------------------------- */

typedef struct sh_report sh_report;

sh_status sh_validate_config(const char* path, sh_report** out);
/* out_dir may be NULL; threads <= 0 keeps the config value; has_seed = 0 keeps the config seed. */
sh_status sh_run_config(const char* path, const char* out_dir, int threads, int has_seed, uint64_t seed,
                        sh_report** out);
const char* sh_report_scenario(const sh_report* report);
/* Empty for validation reports. */
const char* sh_report_out_dir(const sh_report* report);
/* Notes for validation reports, written files for runs. */
size_t sh_report_count(const sh_report* report);
const char* sh_report_item(const sh_report* report, size_t index);
void sh_report_free(sh_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SHAPEHOLO_H */
