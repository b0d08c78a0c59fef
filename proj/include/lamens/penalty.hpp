#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamens/field.hpp"
#include "lamens/lame_semigroup.hpp"
#include "lamens/stepper.hpp"
#include "lamens/trajectory.hpp"

namespace lamens {

/// p = -(lambda + mu) div u with the mean removed.
ScalarField pressure_from_divergence(const VectorField& u, const LameParams& params);

/// Pressure of an incompressible state: -Laplace p = div((u.grad)u), mean zero.
ScalarField navier_stokes_pressure(const VectorField& u, const StepperConfig& config);

/// Leray-projected pseudospectral Navier-Stokes run on the same grid, dt and
/// dealiasing as the penalty runs. Non-solenoidal input is projected first and
/// a warning is recorded on the trajectory.
Trajectory reference_ns_solve(const VectorField& phi, double t_end, double mu, const StepperConfig& config);

struct SweepEntry {
  double lambda = 0.0;
  bool ok = false;
  std::string error;
  TerminationStatus status = TerminationStatus::Completed;
  double final_time = 0.0;
  /// ||u_lambda(t_end) - u_ref(t_end)||_L2
  double l2_error_vs_reference = 0.0;
  /// max over shared snapshot times of the same difference
  double l2_error_sup = 0.0;
  double div_l2 = 0.0;
  double pressure_l2 = 0.0;
  std::string pressure_checksum;
  std::vector<double> energy_times;
  std::vector<double> energy_series;
  /// div_l2 at every shared snapshot time
  std::vector<double> div_history;
  VectorField final_field;
  ScalarField pressure;
};

struct SweepReport {
  double mu = 0.0;
  double t_end = 0.0;
  std::vector<SweepEntry> entries;
  /// Exponent p in ||div u_lambda|| ~ (1/lambda)^p from a log-log fit.
  std::optional<double> div_rate;
  /// Same for ||u_lambda - u_ref||.
  std::optional<double> error_rate;
  /// ||p_{next} - p_{this}|| / ||p_{this}|| along the ladder.
  std::vector<double> pressure_increments;
  std::vector<double> reference_energy_series;
  VectorField reference_final;
  ScalarField reference_pressure;
  std::vector<std::string> warnings;
};

/// Runs the inertia Lamé system for every lambda (increasing, each >= -mu)
/// plus the reference solver, and compares them at t_end. Per-lambda solver
/// failures are recorded on the entry and do not stop the sweep.
SweepReport lambda_sweep(const VectorField& phi, double t_end, double mu, const std::vector<double>& lambdas,
                         const StepperConfig& config);

struct Extrapolation {
  VectorField field;
  double lambda_low = 0.0;
  double lambda_high = 0.0;
  /// ||extrapolated - u_ref|| (needs the report's reference).
  double error_vs_reference = 0.0;
  /// Same error for the largest-lambda entry.
  double largest_lambda_error = 0.0;
  /// error_vs_reference / largest_lambda_error.
  double reduction = 0.0;
};

/// Richardson extrapolation in 1/lambda from the two largest successful
/// entries: u* = (l2 u2 - l1 u1) / (l2 - l1). Throws
/// Error(InsufficientEntries) with fewer than two successful entries.
Extrapolation extrapolate_lambda(const SweepReport& report);

/// Hex FNV-1a hash of a field's physical samples.
std::string field_checksum(const Field& f);

}  // namespace lamens
