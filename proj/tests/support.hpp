#pragma once

// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls the transform or symbol code it is used to check.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "lamens/field.hpp"
#include "lamens/lame_semigroup.hpp"

namespace lamens::testing {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

using Vec3 = std::array<double, 3>;
using Sampler = std::function<Vec3(const Vec3&)>;

/// Field sampled from a closed form at the grid points, both views present.
inline Field sample_vector(const Grid& grid, const Sampler& f) {
  std::vector<std::vector<double>> comps(static_cast<std::size_t>(grid.dim()),
                                         std::vector<double>(grid.physical_size()));
  for (std::size_t p = 0; p < grid.physical_size(); ++p) {
    const auto x = grid.position(p);
    const Vec3 v = f(x);
    for (int c = 0; c < grid.dim(); ++c) comps[static_cast<std::size_t>(c)][p] = v[static_cast<std::size_t>(c)];
  }
  Field u = Field::from_physical(grid, std::move(comps));
  u.ensure_spectral();
  return u;
}

inline Field sample_scalar(const Grid& grid, const std::function<double(const Vec3&)>& f) {
  std::vector<double> vals(grid.physical_size());
  for (std::size_t p = 0; p < grid.physical_size(); ++p) vals[p] = f(grid.position(p));
  Field u = Field::from_physical(grid, {std::move(vals)});
  u.ensure_spectral();
  return u;
}

/// Independent uniform samples in [-1, 1] at every grid point.
inline Field random_samples(const Grid& grid, std::size_t comps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<double>> data(comps, std::vector<double>(grid.physical_size()));
  for (auto& c : data) {
    for (double& v : c) v = dist(rng);
  }
  return Field::from_physical(grid, std::move(data));
}

/// A smooth closed-form field: a few random Fourier modes with |k_i| <= kmax.
/// Keeps the modes so derivatives can be evaluated analytically.
struct TrigField {
  struct Term {
    std::array<int, 3> k;
    int component;
    double cos_amp;
    double sin_amp;
  };
  int dim = 2;
  std::vector<Term> terms;

  static TrigField random(int dim, int n_terms, int kmax, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kd(-kmax, kmax);
    std::uniform_int_distribution<int> cd(0, dim - 1);
    std::uniform_real_distribution<double> ad(-1.0, 1.0);
    TrigField f;
    f.dim = dim;
    for (int i = 0; i < n_terms; ++i) {
      Term t{{kd(rng), kd(rng), dim == 3 ? kd(rng) : 0}, cd(rng), ad(rng), ad(rng)};
      f.terms.push_back(t);
    }
    return f;
  }

  double phase(const Term& t, const Vec3& x) const { return t.k[0] * x[0] + t.k[1] * x[1] + t.k[2] * x[2]; }

  Vec3 value(const Vec3& x) const {
    Vec3 v{0, 0, 0};
    for (const auto& t : terms) {
      const double ph = phase(t, x);
      v[static_cast<std::size_t>(t.component)] += t.cos_amp * std::cos(ph) + t.sin_amp * std::sin(ph);
    }
    return v;
  }

  double divergence(const Vec3& x) const {
    double d = 0.0;
    for (const auto& t : terms) {
      const double ph = phase(t, x);
      d += t.k[static_cast<std::size_t>(t.component)] * (-t.cos_amp * std::sin(ph) + t.sin_amp * std::cos(ph));
    }
    return d;
  }

  Field sample(const Grid& grid) const {
    return sample_vector(grid, [this](const Vec3& x) { return value(x); });
  }
};

/// Textbook O(N^{2d}) DFT: c_k = N^{-d} sum_x u(x) e^{-i k.x} for every
/// k in the full FFT-ordered index box (k1 fastest).
inline std::vector<std::complex<double>> direct_dft(const Grid& grid, std::span<const double> samples) {
  const int n = grid.n();
  const int d = grid.dim();
  const std::size_t total = grid.physical_size();
  std::vector<std::complex<double>> out(total);
  auto wave = [n](int i) { return i <= n / 2 ? i : i - n; };
  for (std::size_t kq = 0; kq < total; ++kq) {
    const int k1 = wave(static_cast<int>(kq % n));
    const int k2 = wave(static_cast<int>((kq / n) % n));
    const int k3 = d == 3 ? wave(static_cast<int>(kq / (static_cast<std::size_t>(n) * n))) : 0;
    std::complex<double> acc = 0.0;
    for (std::size_t p = 0; p < total; ++p) {
      const double x1 = two_pi * static_cast<double>(p % n) / n;
      const double x2 = two_pi * static_cast<double>((p / n) % n) / n;
      const double x3 = d == 3 ? two_pi * static_cast<double>(p / (static_cast<std::size_t>(n) * n)) / n : 0.0;
      acc += samples[p] * std::polar(1.0, -(k1 * x1 + k2 * x2 + k3 * x3));
    }
    out[kq] = acc / static_cast<double>(total);
  }
  return out;
}

/// exp(-t (mu |xi|^2 I + (lambda+mu) xi xi^T)) by Eigen's scaling-and-squaring.
inline Eigen::MatrixXd expm_lame_symbol(const Vec3& xi, int dim, double t, const LameParams& p) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  double norm_sq = 0.0;
  for (int i = 0; i < dim; ++i) norm_sq += xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(i)];
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      a(i, j) = (p.lambda + p.mu) * xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(j)];
    }
    a(i, i) += p.mu * norm_sq;
  }
  return Eigen::MatrixXd((-t * a).exp());
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Continuum L2 distance computed from physical samples only.
inline double physical_l2_distance(const Field& a, const Field& b) {
  Field pa = to_physical(a);
  Field pb = to_physical(b);
  double sum = 0.0;
  for (std::size_t c = 0; c < pa.components(); ++c) {
    const auto x = pa.physical(c);
    const auto y = pb.physical(c);
    for (std::size_t i = 0; i < x.size(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
  }
  return std::sqrt(sum * pa.grid().volume() / static_cast<double>(pa.grid().physical_size()));
}

inline Field taylor_green(const Grid& grid, double amplitude = 1.0) {
  return sample_vector(grid, [amplitude](const Vec3& x) {
    return Vec3{amplitude * std::sin(x[0]) * std::cos(x[1]), -amplitude * std::cos(x[0]) * std::sin(x[1]), 0.0};
  });
}

}  // namespace lamens::testing
