#pragma once

#include <vector>

#include "lamens/field.hpp"
#include "lamens/lame_semigroup.hpp"
#include "lamens/trajectory.hpp"

namespace lamens {

struct StepperConfig {
  double dt_init = 1e-3;
  double dt_min = 1e-8;
  double picard_tol = 1e-10;
  int picard_max = 50;
  double cfl_constant = 0.5;
  bool dealias_enabled = true;
  /// Use 1/2[(u.grad)u + grad(u u)] instead of the convective form.
  bool skew_symmetric = false;
  /// Abort when ||u||_{H^1}^2 exceeds this multiple of its initial value.
  double abort_h1_factor = 1e8;
  /// Store a field snapshot every this many accepted steps (first and last
  /// states are always stored).
  int snapshot_every = 1;
  std::vector<int> hk_orders{2};

  /// Throws Error(ConstraintViolation) listing every violated constraint.
  void validate() const;
};

/// Which equation the stepper advances.
struct FlowModel {
  LameParams params;
  /// Leray-project the nonlinearity (incompressible reference solver).
  bool project_nonlinearity = false;

  static FlowModel lame(const LameParams& params) { return {params, false}; }
  /// Incompressible Navier-Stokes: heat propagator with the nonlinearity
  /// projected onto divergence-free fields.
  static FlowModel navier_stokes(double mu) { return {LameParams::make(mu, -mu), true}; }
};

/// (u.grad)u, evaluated pseudospectrally. With dealiasing the products are
/// formed on the 3/2 padded grid and the result is 2/3 masked.
VectorField nonlinear_term(const VectorField& u, bool dealias_enabled = true, bool skew_symmetric = false);

struct StepResult {
  VectorField u;
  StepDiagnostics diagnostics;
};

/// One exponential-trapezoid step of
///   u(t+dt) = G(dt) u(t) - int_0^dt G(dt-s) Phi(u(t+s)) ds,
/// with Phi linearly interpolated between the step ends and the end value
/// found by Picard iteration:
///   u^{j+1} = G u - dt phi1 Phi(u) - dt phi2 (Phi(u^j) - Phi(u)).
/// Throws Error(PicardDiverged) when the residual stops contracting or
/// picard_max is exhausted, Error(StepTooSmall) when dt < dt_min.
StepResult duhamel_step(const VectorField& u, double dt, const FlowModel& model, const StepperConfig& config);
StepResult duhamel_step(const VectorField& u, double dt, const LameParams& params, const StepperConfig& config);

/// Advance phi to t_end with CFL-limited steps, halving dt whenever Picard
/// fails. Blow-up and step-size failures end the trajectory early with the
/// corresponding status instead of throwing.
Trajectory integrate(const VectorField& phi, double t_end, const FlowModel& model, const StepperConfig& config);
Trajectory integrate(const VectorField& phi, double t_end, const LameParams& params, const StepperConfig& config);

/// (e^z - 1)/z and (e^z - 1 - z)/z^2, accurate for all z <= 0.
double phi1(double z);
double phi2(double z);

}  // namespace lamens
