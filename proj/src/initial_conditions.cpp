#include "lamens/initial_conditions.hpp"

#include <cmath>
#include <random>

#include "lamens/burgers.hpp"
#include "lamens/snapshot.hpp"
#include "lamens/spectral_ops.hpp"

namespace lamens {

namespace {

template <typename F>
VectorField sample(const Grid& grid, F&& f) {
  VectorField u = Field::vector(grid);
  std::vector<std::span<double>> comps;
  for (int c = 0; c < grid.dim(); ++c) comps.push_back(u.physical_mut(static_cast<std::size_t>(c)));
  for (std::size_t p = 0; p < grid.physical_size(); ++p) {
    const auto x = grid.position(p);
    const auto v = f(x);
    for (int c = 0; c < grid.dim(); ++c) comps[static_cast<std::size_t>(c)][p] = v[static_cast<std::size_t>(c)];
  }
  u.ensure_spectral();
  return u;
}

void require_dim(const Grid& grid, int dim, const char* name) {
  if (grid.dim() != dim) {
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " needs a " + std::to_string(dim) + "D grid");
  }
}

}  // namespace

VectorField taylor_green_2d(const Grid& grid, double amplitude) {
  require_dim(grid, 2, "taylor_green_2d");
  return sample(grid, [&](const std::array<double, 3>& x) {
    return std::array<double, 3>{amplitude * std::sin(x[0]) * std::cos(x[1]),
                                 -amplitude * std::cos(x[0]) * std::sin(x[1]), 0.0};
  });
}

VectorField taylor_green_3d(const Grid& grid, double amplitude) {
  require_dim(grid, 3, "taylor_green_3d");
  return sample(grid, [&](const std::array<double, 3>& x) {
    return std::array<double, 3>{amplitude * std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]),
                                 -amplitude * std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]), 0.0};
  });
}

VectorField abc_flow(const Grid& grid, double amplitude) {
  require_dim(grid, 3, "abc_flow");
  const double a = amplitude;
  return sample(grid, [&](const std::array<double, 3>& x) {
    return std::array<double, 3>{a * std::sin(x[2]) + a * std::cos(x[1]), a * std::sin(x[0]) + a * std::cos(x[2]),
                                 a * std::sin(x[1]) + a * std::cos(x[0])};
  });
}

VectorField random_solenoidal(const Grid& grid, std::uint64_t seed, double slope, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double k_max = grid.n() / 3.0;
  // Shell energy ~ |k|^slope spread over ~|k|^(d-1) modes.
  const double exponent = 0.5 * (slope - (grid.dim() - 1));

  std::vector<std::vector<Complex>> coeffs(static_cast<std::size_t>(grid.dim()),
                                           std::vector<Complex>(grid.spectral_size()));
  for (std::size_t s = 0; s < grid.spectral_size(); ++s) {
    const Mode k = grid.mode(s);
    const double norm = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]);
    // Draw for every mode so the stream does not depend on the cutoff.
    std::array<Complex, 3> draw;
    for (auto& z : draw) {
      const double re = normal(rng);
      const double im = normal(rng);
      z = Complex(re, im);
    }
    if (norm < 1.0 || norm > k_max || grid.is_nyquist(k)) continue;
    const double scale = std::pow(norm, exponent);
    for (int c = 0; c < grid.dim(); ++c) coeffs[static_cast<std::size_t>(c)][s] = scale * draw[static_cast<std::size_t>(c)];
  }
  // Realise through the c2r transform first: it only reads half of the
  // k1 = 0 plane, so projecting before that would not survive the round trip.
  VectorField real = to_physical(Field::from_spectral(grid, std::move(coeffs)));
  VectorField u = to_physical(project_solenoidal(to_spectral(std::move(real))));
  const double peak = max_magnitude(u);
  if (peak > 0.0) u = to_physical(scaled(amplitude / peak, u));
  u.ensure_spectral();
  return u;
}

VectorField make_initial_condition(const RunConfig& config) {
  const Grid grid = Grid::make(config.dim, config.grid_n);
  switch (config.initial_condition) {
    case InitialCondition::TaylorGreen2D: return taylor_green_2d(grid, config.amplitude);
    case InitialCondition::TaylorGreen3D: return taylor_green_3d(grid, config.amplitude);
    case InitialCondition::AbcFlow: return abc_flow(grid, config.amplitude);
    case InitialCondition::GradientColeHopf: {
      VectorField u = cole_hopf_oracle(cosine_theta(grid), config.mu, 0.0);
      if (config.amplitude != 1.0) u = scaled(config.amplitude, u);
      u.ensure_physical();
      u.ensure_spectral();
      return u;
    }
    case InitialCondition::RandomSolenoidal:
      return random_solenoidal(grid, config.seed, config.spectrum_slope, config.amplitude);
    case InitialCondition::SnapshotFile: {
      SnapshotData data = read_snapshot(config.snapshot_path, grid);
      if (!data.field.is_vector()) {
        throw Error(ErrorKind::DimensionMismatch, config.snapshot_path + " does not hold a vector field");
      }
      data.field.ensure_spectral();
      return data.field;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled initial condition");
}

}  // namespace lamens
