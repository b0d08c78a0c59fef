#include "lamens/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lamens/error.hpp"
#include "lamens/spectral_ops.hpp"

namespace lamens {

ScalarField cosine_theta(const Grid& grid, double offset, double amplitude, int axis) {
  std::vector<std::vector<double>> samples(1, std::vector<double>(grid.physical_size()));
  for (std::size_t p = 0; p < grid.physical_size(); ++p) {
    samples[0][p] = offset + amplitude * std::cos(grid.position(p)[static_cast<std::size_t>(axis)]);
  }
  return Field::from_physical(grid, std::move(samples));
}

VectorField cole_hopf_oracle(const ScalarField& theta0, double mu, double t) {
  if (theta0.components() != 1) throw Error(ErrorKind::DimensionMismatch, "theta0 must be a scalar field");
  if (!(mu > 0.0) || !(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "cole_hopf_oracle needs mu > 0, t >= 0");
  const Grid& g = theta0.grid();

  auto require_positive = [](const Field& theta, const char* what) {
    const auto vals = theta.physical(0);
    const double lowest = *std::min_element(vals.begin(), vals.end());
    if (!(lowest > 0.0)) {
      std::ostringstream msg;
      msg << what << " must be strictly positive (minimum " << lowest << ")";
      throw Error(ErrorKind::NonPositiveTheta, msg.str());
    }
  };
  require_positive(to_physical(theta0), "theta0");

  Field theta = to_spectral(theta0);
  {
    auto cs = theta.spectral_mut(0);
    for (std::size_t s = 0; s < cs.size(); ++s) {
      const Wavevector xi = g.symbol_wavevector(s);
      cs[s] *= std::exp(-mu * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) * t);
    }
  }
  theta.ensure_physical();
  require_positive(theta, "theta(t)");

  Field grad = to_physical(gradient(theta));
  const auto th = theta.physical(0);
  std::vector<std::vector<double>> u(static_cast<std::size_t>(g.dim()), std::vector<double>(g.physical_size()));
  for (int d = 0; d < g.dim(); ++d) {
    const auto gd = grad.physical(static_cast<std::size_t>(d));
    for (std::size_t p = 0; p < g.physical_size(); ++p) u[d][p] = -2.0 * mu * gd[p] / th[p];
  }
  return to_spectral(Field::from_physical(g, std::move(u)));
}

}  // namespace lamens
