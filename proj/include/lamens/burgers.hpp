#pragma once

#include "lamens/field.hpp"

namespace lamens {

/// theta0(x) = offset + amplitude * cos(x_axis), sampled on the grid.
ScalarField cosine_theta(const Grid& grid, double offset = 2.0, double amplitude = 1.0, int axis = 0);

/// Exact viscous Burgers solution u = -2 mu grad log theta, where theta solves
/// the heat equation theta_t = mu Laplace theta from theta0. The heat flow is
/// applied mode by mode and grad theta / theta is evaluated pointwise, so the
/// result is exact whenever theta0 is resolved by the grid.
/// Throws Error(NonPositiveTheta) if theta0 or theta(t) is not strictly positive
/// on the grid.
VectorField cole_hopf_oracle(const ScalarField& theta0, double mu, double t);

}  // namespace lamens
