#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lamens/grid.hpp"
#include "lamens/lame_semigroup.hpp"

namespace lamens {

using Point3 = std::array<double, 3>;
using MultiIndex = std::array<int, 3>;

/// Evaluation point of the free-space kernels in R^3; t must be positive.
struct KernelPoint {
  Point3 x{0.0, 0.0, 0.0};
  double t = 1.0;
  LameParams params;
};

/// 1 / (n (n-2) omega_n), omega_n the volume of the unit ball; 1/(4 pi) at n = 3.
double newtonian_constant(int n);

/// int_0^1 tau^{2m} exp(-w tau^2) d tau, for w >= 0.
double gaussian_moment(int m, double w);

/// W(x,t) = [erf(r/sqrt(4(lambda+2mu)t)) - erf(r/sqrt(4 mu t))] / (4 pi r),
/// the Newtonian potential of the difference of the two heat kernels.
double w_function(const KernelPoint& p);

/// Z(x,t) = heat_mu(x,t) I - Hess W(x,t), the inverse Fourier transform of
/// the propagator symbol exp(-t mu|xi|^2) Q(xi) + exp(-t(lambda+2mu)|xi|^2) P(xi).
Eigen::Matrix3d z_kernel(const KernelPoint& p);

/// d^alpha Z for |alpha| <= 2, entrywise.
Eigen::Matrix3d z_kernel_derivative(const KernelPoint& p, const MultiIndex& alpha);

/// Frozen-coefficient Green matrix symbol
///   exp(-d (mu|xi|^2 I + (lambda+mu) xi xi^T)) * exp(-i (b.xi) d) * exp(-c0 d),
/// d = duration >= 0. Throws Error(InvalidArgument) for c0 < 0 or d < 0.
Eigen::Matrix3cd green_matrix_symbol(const Wavevector& xi, double duration, const LameParams& params,
                                     const Point3& b, double c0);

struct SampleSpec {
  double r_max = 4.0;
  double t_min = 0.01;
  double t_max = 1.0;
  int n_r = 41;
  int n_t = 25;
  std::vector<Point3> directions{{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {1.0, 1.0, 1.0}};
  /// Decay constant c in exp(+c r^2 / t); defaults to 1/(16 mu) per entry.
  std::optional<double> decay_c;
};

struct BoundSample {
  double lambda = 0.0;
  double r = 0.0;
  double t = 0.0;
  int direction = 0;
  /// max |d^alpha Z| * t^{(3+|alpha|)/2} * exp(c r^2 / t)
  double scaled_value = 0.0;
};

struct BoundFitReport {
  int alpha_order = 0;
  std::vector<double> lambdas;
  std::vector<double> mus;
  std::vector<double> decay_c;
  /// Supremum of the scaled samples per lambda (the fitted C).
  std::vector<double> fitted_constants;
  /// True when the fitted constants grow monotonically along the ladder.
  bool monotone_growth = false;
  std::string sample_description;
  std::vector<BoundSample> samples;
};

/// Samples the Gaussian bound |d^alpha Z| <= C t^{-(3+|alpha|)/2} exp(-c r^2/t)
/// for every parameter set and reports the smallest C per set for the fixed c.
/// Throws Error(InvalidArgument) for an empty sample set or alpha_order > 2.
BoundFitReport verify_gaussian_bound(int alpha_order, const std::vector<LameParams>& params_list,
                                     const SampleSpec& spec);

}  // namespace lamens
