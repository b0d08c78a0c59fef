#pragma once

#include "lamens/field.hpp"
#include "lamens/spectral_ops.hpp"

namespace lamens {

/// Lamé constants of the operator -mu*Laplace - (lambda+mu)*grad div.
struct LameParams {
  double mu = 1.0;
  double lambda = 0.0;

  /// Throws Error(ConstraintViolation) unless mu > 0 and lambda + mu >= 0.
  static LameParams make(double mu, double lambda);

  /// lambda + 2 mu, the decay rate of compressible modes.
  double compressive_rate() const noexcept { return lambda + 2.0 * mu; }
  /// lambda + mu, the grad-div strength.
  double penalty() const noexcept { return lambda + mu; }
};

/// Scalar decay factors of the two invariant subspaces at one mode.
struct PropagatorSymbol {
  double shear = 1.0;        ///< exp(-mu |xi|^2 t), acts on Q(xi)
  double compressive = 1.0;  ///< exp(-(lambda+2mu) |xi|^2 t), acts on P(xi)
};

PropagatorSymbol propagator_factors(double xi_norm_sq, double t, const LameParams& params);

/// G(xi, t) = shear * Q(xi) + compressive * P(xi); G(0, t) = I.
ModeMatrix propagator_symbol(const Wavevector& xi, double t, const LameParams& params, int dim);

/// exp(-t L) phi applied mode by mode.
VectorField apply_semigroup(const VectorField& phi, double t, const LameParams& params);

/// Mean-zero solution psi of -Laplace psi = grad div phi on the torus:
/// psi_hat = -P(xi) phi_hat, psi_hat(0) = 0.
VectorField poisson_psi(const VectorField& phi);

enum class SignConvention {
  AsWritten,  ///< v = G_mu*phi + (G_{lambda+2mu} - G_mu)*psi with psi from poisson_psi
  Corrected,  ///< same with psi replaced by -psi, which reproduces the symbol form
};

struct RepresentationResult {
  VectorField field;
  /// ||field - apply_semigroup(phi)|| / ||apply_semigroup(phi)||.
  double relative_discrepancy = 0.0;
};

/// Heat-kernel plus Poisson-potential form of the semigroup, evaluated
/// spectrally, together with its disagreement with apply_semigroup.
RepresentationResult semigroup_via_representation(const VectorField& phi, double t, const LameParams& params,
                                                  SignConvention convention);

/// sqrt(t) * ||exp(-tL) phi||_{H^{m+1}} / ||phi||_{H^m}; requires 0 < t <= 1
/// and a nonzero phi.
double smoothing_ratio(const VectorField& phi, double t, const LameParams& params, int m);

}  // namespace lamens
