#pragma once

#include <vector>

#include "lamens/field.hpp"
#include "lamens/trajectory.hpp"

namespace lamens {

/// Discrete H^k norm squared with multiplier (1 + |xi|^2)^k. k = 0 is the L2
/// norm squared. Throws Error(InvalidArgument) for negative k.
double sobolev_norm_sq(const Field& u, int k);

/// ||grad u||^2 summed over components.
double gradient_norm_sq(const Field& u);

/// All diagnostic columns of one state (picard_iters and dt left at 0).
DiagnosticRecord measure(const VectorField& u, double t, const std::vector<int>& hk_orders);

struct GronwallEnvelope {
  std::vector<double> envelope;
  bool violated = false;
};

/// ||u(0)||_{H^1}^2 * exp(c1 * int_0^t u_max^2 ds), trapezoid in time.
GronwallEnvelope gronwall_envelope(const DiagnosticSeries& series, double c1);

/// Smallest c1 for which the envelope is never exceeded (0 if h1 never grows).
double fit_gronwall_constant(const DiagnosticSeries& series);

/// max_t | ||u(t)||^2 + 2 mu int_0^t ||grad u||^2 - ||u(0)||^2 | / ||u(0)||^2.
double energy_identity_residual(const Trajectory& traj, double mu);

/// Smallest c_k >= 0 with d/dt ||u||_{H^k}^2 <= c_k ||u||_inf^2 ||u||_{H^k}^2
/// along consecutive diagnostic rows. k must be 0, 1 or a recorded hk order.
double hk_inequality_check(const Trajectory& traj, int k);

/// max_t u_max(t) / u_max(0) (0 for a zero initial field).
double sup_norm_constant(const Trajectory& traj);

/// Largest per-step mismatch in the Lamé energy balance
///   d/dt 1/2||u||^2 + mu||grad u||^2 + (lambda+mu)||div u||^2 + int u.(u.grad)u = 0,
/// relative to the dissipation scale. Needs a snapshot at every step.
double lame_energy_balance_residual(const Trajectory& traj);

}  // namespace lamens
