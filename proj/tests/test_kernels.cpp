#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "lamens/error.hpp"
#include "lamens/kernels.hpp"
#include "support.hpp"

using namespace lamens;
using namespace lamens::testing;

namespace {

double heat(double r, double a, double t) { return std::exp(-r * r / (4 * a * t)) * std::pow(4 * pi * a * t, -1.5); }

// Newtonian potential of the radial source f = heat_c - heat_mu, by quadrature:
// (1/r) int_0^r f rho^2 + int_r^inf f rho.
double newtonian_oracle(double r, double t, const LameParams& p) {
  const double c = p.compressive_rate();
  auto f = [&](double rho) { return heat(rho, c, t) - heat(rho, p.mu, t); };
  using boost::math::quadrature::gauss_kronrod;
  const double outer_cut = 40.0 * std::sqrt(c * t) + r;
  double inner = 0.0;
  if (r > 0.0) inner = gauss_kronrod<double, 61>::integrate([&](double rho) { return f(rho) * rho * rho; }, 0.0, r, 15, 1e-14) / r;
  const double outer =
      gauss_kronrod<double, 61>::integrate([&](double rho) { return f(rho) * rho; }, r, outer_cut, 15, 1e-14);
  return inner + outer;
}

Eigen::Matrix3cd green_oracle(const Vec3& xi, double d, const LameParams& p, const Vec3& b, double c0) {
  Eigen::Vector3d v(xi[0], xi[1], xi[2]);
  const double bxi = b[0] * xi[0] + b[1] * xi[1] + b[2] * xi[2];
  Eigen::Matrix3cd gen = (-(p.mu * v.squaredNorm() * Eigen::Matrix3d::Identity() + p.penalty() * v * v.transpose()) * d)
                             .cast<std::complex<double>>();
  gen.diagonal().array() += std::complex<double>(-c0 * d, -bxi * d);
  return gen.exp();
}

Eigen::Matrix3d z_at(const Point3& x, double t, const LameParams& p) { return z_kernel(KernelPoint{x, t, p}); }

}  // namespace

TEST_CASE("Newtonian constant") {
  CHECK(newtonian_constant(3) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
  // n = 5: omega_5 = 8 pi^2 / 15
  CHECK(newtonian_constant(5) == doctest::Approx(1.0 / (15.0 * 8.0 * pi * pi / 15.0)).epsilon(1e-14));
  CHECK_THROWS_AS(newtonian_constant(2), Error);
}

TEST_CASE("Gaussian moments against quadrature") {
  using boost::math::quadrature::gauss_kronrod;
  for (int m : {0, 1, 2, 4}) {
    for (double w : {0.0, 1e-3, 0.7, 1.99, 2.0, 5.0, 40.0}) {
      const double oracle = gauss_kronrod<double, 61>::integrate(
          [&](double s) { return std::pow(s, 2 * m) * std::exp(-w * s * s); }, 0.0, 1.0, 10, 1e-15);
      CHECK(gaussian_moment(m, w) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(gaussian_moment(-1, 1.0), Error);
}

TEST_CASE("W function") {
  const LameParams heat_case = LameParams::make(1.0, -1.0);
  CHECK(w_function({{0.3, 0.1, 0.0}, 0.5, heat_case}) == 0.0);

  // r -> 0: -(sqrt(1/(4 mu t)) - sqrt(1/(4 c t))) / (2 pi^{3/2}); mu = t = 1,
  // c = 4 gives -1 / (8 pi^{3/2}).
  const LameParams p = LameParams::make(1.0, 2.0);
  CHECK(w_function({{0.0, 0.0, 0.0}, 1.0, p}) == doctest::Approx(-1.0 / (8.0 * std::pow(pi, 1.5))).epsilon(1e-14));
  CHECK(w_function({{1e-7, 0.0, 0.0}, 1.0, p}) == doctest::Approx(-0.022446).epsilon(1e-4));

  for (const LameParams q : {p, LameParams::make(0.3, 0.0), LameParams::make(1.0, 100.0)}) {
    for (double t : {0.05, 1.0}) {
      for (double r : {0.0, 0.2, 1.0, 3.0}) {
        const double w = w_function({{r / std::sqrt(3.0), r / std::sqrt(3.0), r / std::sqrt(3.0)}, t, q});
        const double oracle = newtonian_oracle(r, t, q);
        CHECK(std::abs(w - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
      }
    }
  }
  CHECK_THROWS_AS(w_function({{1, 0, 0}, 0.0, p}), Error);

  // Mass: the transform (e^{-c|xi|^2 t} - e^{-mu|xi|^2 t}) / |xi|^2 tends to
  // -(lambda + mu) t at xi = 0.
  using boost::math::quadrature::gauss_kronrod;
  for (const LameParams q : {p, LameParams::make(1.0, 3.0)}) {
    const double t = 0.5;
    const double mass = gauss_kronrod<double, 61>::integrate(
        [&](double r) { return 4.0 * pi * r * r * w_function({{r, 0.0, 0.0}, t, q}); }, 0.0, 60.0, 15, 1e-13);
    CHECK(mass == doctest::Approx(-q.penalty() * t).epsilon(1e-9));
  }
}

TEST_CASE("Z kernel structure") {
  const Point3 x{0.4, -0.3, 0.7};
  const LameParams heat_case = LameParams::make(0.5, -0.5);
  const Eigen::Matrix3d zh = z_at(x, 0.3, heat_case);
  const double r = std::sqrt(0.16 + 0.09 + 0.49);
  CHECK((zh - heat(r, 0.5, 0.3) * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-16);

  const LameParams p = LameParams::make(1.0, 3.0);
  const Eigen::Matrix3d z = z_at(x, 0.5, p);
  CHECK((z - z.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((z - z_at({-x[0], -x[1], -x[2]}, 0.5, p)).cwiseAbs().maxCoeff() < 1e-15);

  // Rotation covariance: Z(Rx) = R Z(x) R^T for a coordinate permutation.
  const Eigen::Matrix3d zp = z_at({x[1], x[2], x[0]}, 0.5, p);
  Eigen::Matrix3d perm = Eigen::Matrix3d::Zero();
  perm(0, 1) = perm(1, 2) = perm(2, 0) = 1.0;
  CHECK((zp - perm * z * perm.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Z kernel derivatives against finite differences") {
  const LameParams p = LameParams::make(1.0, 3.0);
  const Point3 x{0.4, -0.3, 0.7};
  const double t = 0.5;
  const double h = 1e-4;
  auto shifted = [&](int d, double s) {
    Point3 y = x;
    y[d] += s;
    return y;
  };
  for (int d = 0; d < 3; ++d) {
    MultiIndex a{0, 0, 0};
    a[d] = 1;
    const Eigen::Matrix3d fd = (z_at(shifted(d, h), t, p) - z_at(shifted(d, -h), t, p)) / (2 * h);
    CHECK((z_kernel_derivative({x, t, p}, a) - fd).cwiseAbs().maxCoeff() < 1e-8);

    MultiIndex a2{0, 0, 0};
    a2[d] = 2;
    const Eigen::Matrix3d fd2 = (z_at(shifted(d, h), t, p) - 2 * z_at(x, t, p) + z_at(shifted(d, -h), t, p)) / (h * h);
    CHECK((z_kernel_derivative({x, t, p}, a2) - fd2).cwiseAbs().maxCoeff() < 1e-6);
  }
  MultiIndex mixed{1, 0, 1};
  Point3 pp = x, pm = x, mp = x, mm = x;
  pp[0] += h, pp[2] += h;
  pm[0] += h, pm[2] -= h;
  mp[0] -= h, mp[2] += h;
  mm[0] -= h, mm[2] -= h;
  const Eigen::Matrix3d fdm = (z_at(pp, t, p) - z_at(pm, t, p) - z_at(mp, t, p) + z_at(mm, t, p)) / (4 * h * h);
  CHECK((z_kernel_derivative({x, t, p}, mixed) - fdm).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((z_kernel_derivative({x, t, p}, {0, 0, 0}) - z_at(x, t, p)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(z_kernel_derivative({x, t, p}, {2, 1, 0}), Error);
}

TEST_CASE("frozen-coefficient Green symbol") {
  const LameParams p = LameParams::make(0.7, 2.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Vec3 xi{u(rng), u(rng), u(rng)};
    const Vec3 b{u(rng), u(rng), u(rng)};
    const double d = 0.1 * (u(rng) + 3.0);
    const double c0 = 0.5 * (u(rng) + 3.0);
    const Eigen::Matrix3cd g = green_matrix_symbol(xi, d, p, b, c0);
    CHECK((g - green_oracle(xi, d, p, b, c0)).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::Matrix3cd g0 = green_matrix_symbol(xi, d, p, {0, 0, 0}, 0.0);
    CHECK((g0 - expm_lame_symbol(xi, 3, d, p).cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-12);
    // The drift only rotates the phase.
    CHECK((g.cwiseAbs() - std::exp(-c0 * d) * g0.cwiseAbs()).maxCoeff() < 1e-14);
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    CHECK(g.cwiseAbs().maxCoeff() <= std::exp(-c0 * d - p.mu * k2 * d) * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(green_matrix_symbol({1, 0, 0}, 1.0, p, {0, 0, 0}, -0.1), Error);
  CHECK_THROWS_AS(green_matrix_symbol({1, 0, 0}, -1.0, p, {0, 0, 0}, 0.0), Error);
}

TEST_CASE("Gaussian bound fit") {
  SampleSpec spec;
  spec.decay_c = 1.0 / 8.0;
  const BoundFitReport heat_fit = verify_gaussian_bound(0, {LameParams::make(1.0, -1.0)}, spec);
  REQUIRE(heat_fit.fitted_constants.size() == 1);
  CHECK(heat_fit.fitted_constants[0] <= 2.0 * std::pow(4.0 * pi, -1.5));
  CHECK(heat_fit.fitted_constants[0] == doctest::Approx(std::pow(4.0 * pi, -1.5)).epsilon(1e-12));

  SampleSpec one;
  one.n_r = 1;
  one.n_t = 1;
  one.t_min = one.t_max = 1.0;
  const LameParams p = LameParams::make(1.0, 1.0);
  const BoundFitReport single = verify_gaussian_bound(0, {p}, one);
  CHECK(single.samples.size() == 1);
  CHECK(single.fitted_constants[0] == z_at({0, 0, 0}, 1.0, p).cwiseAbs().maxCoeff());
  CHECK_FALSE(single.monotone_growth);

  SampleSpec empty;
  empty.directions.clear();
  CHECK_THROWS_AS(verify_gaussian_bound(0, {p}, empty), Error);
  CHECK_THROWS_AS(verify_gaussian_bound(0, {}, spec), Error);
  CHECK_THROWS_AS(verify_gaussian_bound(3, {p}, spec), Error);

  spec.decay_c.reset();
  spec.n_r = 11;
  spec.n_t = 6;
  for (int order : {0, 1, 2}) {
    const BoundFitReport fit =
        verify_gaussian_bound(order, {LameParams::make(1.0, 0.0), LameParams::make(1.0, 1.0)}, spec);
    for (double c : fit.fitted_constants) {
      CHECK(std::isfinite(c));
      CHECK(c > 0.0);
    }
    CHECK(fit.decay_c[0] == 1.0 / 16.0);
    CHECK(fit.samples.size() == 2 * (1 + 10 * 3) * 6);
  }
}
