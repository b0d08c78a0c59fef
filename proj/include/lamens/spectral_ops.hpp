#pragma once

#include <Eigen/Core>

#include "lamens/field.hpp"

namespace lamens {

using ModeMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// Per-mode compressible/solenoidal projectors.
/// P(xi) = xi xi^T / |xi|^2, Q(xi) = I - P(xi), with P(0) := 0.
struct ModeProjector {
  static ModeMatrix compressible(const Wavevector& xi, int dim);
  static ModeMatrix solenoidal(const Wavevector& xi, int dim);
};

/// d/dx_axis of every component (spectral output).
Field partial_derivative(const Field& f, int axis);
/// Spectral divergence i xi . u_hat of a vector field.
ScalarField divergence(const VectorField& u);
/// Gradient of a scalar field.
VectorField gradient(const ScalarField& f);

VectorField project_solenoidal(const VectorField& u);
VectorField project_compressible(const VectorField& u);

/// True when the mode survives the 2/3 rule (every |k_i| <= N/3).
bool dealias_keeps(const Grid& grid, const Mode& k) noexcept;
/// Zero every coefficient with some |k_i| > N/3.
Field dealias(const Field& f);

/// Physical samples of a spectral component on the padded grid. Nyquist
/// coefficients are split evenly between +N/2 and -N/2 so that the padded
/// samples interpolate the original ones.
std::vector<double> pad_to_physical(const Grid& grid, const Grid& padded, std::span<const Complex> coeffs);
/// Spectral coefficients on grid of padded samples, keeping only modes that
/// survive the 2/3 rule.
std::vector<Complex> truncate_from_physical(const Grid& grid, const Grid& padded, std::span<const double> samples);

/// Alias-free product a*b of two scalar fields followed by the 2/3 mask.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

}  // namespace lamens
