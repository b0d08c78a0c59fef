#include "lamens/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lamens/error.hpp"

namespace lamens {

namespace {

constexpr double pi = std::numbers::pi;

struct Term {
  int order;  // which derivative of the radial profile f
  double coeff;
  MultiIndex power;
};

// d^beta of f(|x|^2 / s2). The chain rule only ever produces terms of the
// form f^{(m)}(w) * c * x^p, so the expansion is carried symbolically.
template <class Profile>
double radial_derivative(const Point3& x, double s2, const MultiIndex& beta, const Profile& profile) {
  std::vector<Term> terms{{0, 1.0, {0, 0, 0}}};
  for (int d = 0; d < 3; ++d) {
    for (int rep = 0; rep < beta[d]; ++rep) {
      std::vector<Term> next;
      next.reserve(terms.size() * 2);
      for (const Term& term : terms) {
        Term chain = term;
        chain.order += 1;
        chain.coeff *= 2.0 / s2;
        chain.power[d] += 1;
        next.push_back(chain);
        if (term.power[d] > 0) {
          Term poly = term;
          poly.coeff *= term.power[d];
          poly.power[d] -= 1;
          next.push_back(poly);
        }
      }
      terms = std::move(next);
    }
  }
  const double w = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / s2;
  std::array<double, 9> cache{};
  std::array<bool, 9> have{};
  double sum = 0.0;
  for (const Term& term : terms) {
    const auto m = static_cast<std::size_t>(term.order);
    if (!have[m]) {
      cache[m] = profile(term.order, w);
      have[m] = true;
    }
    double mono = term.coeff;
    for (int d = 0; d < 3; ++d) {
      for (int k = 0; k < term.power[d]; ++k) mono *= x[d];
    }
    sum += mono * cache[m];
  }
  return sum;
}

// Heat kernel exp(-r^2/(4 a t)) / (4 pi a t)^{3/2}: profile exp(-w).
double heat_derivative(const Point3& x, double a, double t, const MultiIndex& beta) {
  const double s2 = 4.0 * a * t;
  const double amp = std::pow(4.0 * pi * a * t, -1.5);
  return amp * radial_derivative(x, s2, beta, [](int m, double w) { return (m % 2 == 0 ? 1.0 : -1.0) * std::exp(-w); });
}

// int_lo^hi sigma^{2m} exp(-w sigma^2) d sigma. Far out in the tail the two
// ends are taken from the upper incomplete moments, which are all positive;
// nearer the origin from the lower ones. Either way nothing cancels
// catastrophically.
double band_moment(int m, double w, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (w * lo * lo >= 0.5) {
    const double root = std::sqrt(w);
    auto upper = [&](double tau) {
      double value = std::sqrt(pi) * std::erfc(root * tau) / (2.0 * root);
      const double decay = std::exp(-w * tau * tau);
      for (int k = 1; k <= m; ++k) value = (std::pow(tau, 2 * k - 1) * decay + (2.0 * k - 1.0) * value) / (2.0 * w);
      return value;
    };
    return upper(lo) - upper(hi);
  }
  auto lower = [&](double tau) { return std::pow(tau, 2 * m + 1) * gaussian_moment(m, w * tau * tau); };
  return lower(hi) - lower(lo);
}

// d^beta W, using W = -(2 pi^{3/2})^{-1} int_{tau_c}^{tau_mu} exp(-r^2 sigma^2) d sigma
// with tau_a = 1/sqrt(4 a t).
double w_derivative(const Point3& x, double t, const LameParams& params, const MultiIndex& beta) {
  const double comp = params.compressive_rate();
  if (comp == params.mu) return 0.0;
  const double tau_mu = 1.0 / std::sqrt(4.0 * params.mu * t);
  const double tau_c = 1.0 / std::sqrt(4.0 * comp * t);
  const double amp = -1.0 / (2.0 * std::pow(pi, 1.5));
  return amp * radial_derivative(x, 1.0, beta, [&](int m, double w) {
           return (m % 2 == 0 ? 1.0 : -1.0) * band_moment(m, w, tau_c, tau_mu);
         });
}

void require_positive_time(const KernelPoint& p) {
  if (!(p.t > 0.0)) throw Error(ErrorKind::InvalidArgument, "kernels need t > 0");
}

}  // namespace

double newtonian_constant(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "Newtonian constant needs n >= 3");
  const double dn = static_cast<double>(n);
  const double omega = 2.0 * std::pow(pi, dn / 2.0) / (dn * std::tgamma(dn / 2.0));
  return 1.0 / (dn * (dn - 2.0) * omega);
}

double gaussian_moment(int m, double w) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "moment order must be nonnegative");
  if (w < 2.0) {
    // sum_n (-w)^n / (n! (2m + 2n + 1))
    double term = 1.0;
    double sum = 1.0 / (2.0 * m + 1.0);
    for (int n = 1; n < 60; ++n) {
      term *= -w / n;
      const double add = term / (2.0 * m + 2.0 * n + 1.0);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double root = std::sqrt(w);
  double value = std::sqrt(pi) * std::erf(root) / (2.0 * root);
  const double decay = std::exp(-w);
  for (int k = 1; k <= m; ++k) value = ((2.0 * k - 1.0) * value - decay) / (2.0 * w);
  return value;
}

double w_function(const KernelPoint& p) {
  require_positive_time(p);
  return w_derivative(p.x, p.t, p.params, {0, 0, 0});
}

Eigen::Matrix3d z_kernel(const KernelPoint& p) {
  require_positive_time(p);
  const double mu = p.params.mu;
  const double comp = p.params.compressive_rate();
  const double r2 = p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2];
  const double heat = std::exp(-r2 / (4.0 * mu * p.t)) * std::pow(4.0 * pi * mu * p.t, -1.5);
  Eigen::Matrix3d z = heat * Eigen::Matrix3d::Identity();
  if (comp == mu) return z;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      MultiIndex beta{0, 0, 0};
      beta[i] += 1;
      beta[j] += 1;
      z(i, j) -= w_derivative(p.x, p.t, p.params, beta);
      if (i != j) z(j, i) = z(i, j);
    }
  }
  return z;
}

Eigen::Matrix3d z_kernel_derivative(const KernelPoint& p, const MultiIndex& alpha) {
  require_positive_time(p);
  if (alpha[0] < 0 || alpha[1] < 0 || alpha[2] < 0 || alpha[0] + alpha[1] + alpha[2] > 2) {
    throw Error(ErrorKind::InvalidArgument, "z_kernel_derivative supports |alpha| <= 2");
  }
  const double mu = p.params.mu;
  const double comp = p.params.compressive_rate();
  const double heat = heat_derivative(p.x, mu, p.t, alpha);
  Eigen::Matrix3d z = heat * Eigen::Matrix3d::Identity();
  if (comp == mu) return z;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      MultiIndex beta = alpha;
      beta[i] += 1;
      beta[j] += 1;
      const double hess = w_derivative(p.x, p.t, p.params, beta);
      z(i, j) -= hess;
      if (i != j) z(j, i) -= hess;
    }
  }
  return z;
}

Eigen::Matrix3cd green_matrix_symbol(const Wavevector& xi, double duration, const LameParams& params, const Point3& b,
                                     double c0) {
  if (!(duration >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Green matrix needs a nonnegative duration");
  if (!(c0 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Green matrix needs c0 >= 0");
  const ModeMatrix lame = propagator_symbol(xi, duration, params, 3);
  const double phase = -(b[0] * xi[0] + b[1] * xi[1] + b[2] * xi[2]) * duration;
  const Complex scalar = std::exp(Complex{-c0 * duration, phase});
  Eigen::Matrix3cd out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = scalar * lame(i, j);
  }
  return out;
}

BoundFitReport verify_gaussian_bound(int alpha_order, const std::vector<LameParams>& params_list,
                                     const SampleSpec& spec) {
  if (alpha_order < 0 || alpha_order > 2) throw Error(ErrorKind::InvalidArgument, "alpha order must be 0, 1 or 2");
  if (spec.n_r < 1 || spec.n_t < 1 || spec.directions.empty() || params_list.empty()) {
    throw Error(ErrorKind::InvalidArgument, "Gaussian bound check needs a nonempty sample set");
  }
  if (!(spec.t_min > 0.0) || spec.t_max < spec.t_min || spec.r_max < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "sample box needs 0 < t_min <= t_max and r_max >= 0");
  }

  std::vector<MultiIndex> alphas;
  for (int a = 0; a <= alpha_order; ++a) {
    for (int b = 0; a + b <= alpha_order; ++b) {
      const int c = alpha_order - a - b;
      alphas.push_back({a, b, c});
    }
  }

  std::vector<Point3> dirs;
  for (const auto& d : spec.directions) {
    const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (len == 0.0) throw Error(ErrorKind::InvalidArgument, "sample direction must be nonzero");
    dirs.push_back({d[0] / len, d[1] / len, d[2] / len});
  }

  BoundFitReport report;
  report.alpha_order = alpha_order;
  std::ostringstream desc;
  desc << "r in [0, " << spec.r_max << "] (" << spec.n_r << " uniform), t in [" << spec.t_min << ", " << spec.t_max
       << "] (" << spec.n_t << " log-spaced), " << dirs.size() << " directions";
  report.sample_description = desc.str();

  const double time_power = (3.0 + alpha_order) / 2.0;
  for (const LameParams& params : params_list) {
    const double c = spec.decay_c.value_or(1.0 / (16.0 * params.mu));
    double best = 0.0;
    for (int it = 0; it < spec.n_t; ++it) {
      const double t = spec.n_t == 1 ? spec.t_min
                                     : spec.t_min * std::pow(spec.t_max / spec.t_min,
                                                             static_cast<double>(it) / (spec.n_t - 1));
      for (int ir = 0; ir < spec.n_r; ++ir) {
        const double r = spec.n_r == 1 ? 0.0 : spec.r_max * static_cast<double>(ir) / (spec.n_r - 1);
        for (std::size_t id = 0; id < dirs.size(); ++id) {
          if (r == 0.0 && id > 0) break;
          const KernelPoint p{{r * dirs[id][0], r * dirs[id][1], r * dirs[id][2]}, t, params};
          double entry = 0.0;
          for (const auto& alpha : alphas) {
            const Eigen::Matrix3d dz = alpha_order == 0 ? z_kernel(p) : z_kernel_derivative(p, alpha);
            entry = std::max(entry, dz.cwiseAbs().maxCoeff());
          }
          const double scaled = entry * std::pow(t, time_power) * std::exp(c * r * r / t);
          best = std::max(best, scaled);
          report.samples.push_back({params.lambda, r, t, static_cast<int>(id), scaled});
        }
      }
    }
    report.lambdas.push_back(params.lambda);
    report.mus.push_back(params.mu);
    report.decay_c.push_back(c);
    report.fitted_constants.push_back(best);
  }
  report.monotone_growth = report.fitted_constants.size() > 1;
  for (std::size_t i = 1; i < report.fitted_constants.size(); ++i) {
    if (!(report.fitted_constants[i] > report.fitted_constants[i - 1])) report.monotone_growth = false;
  }
  return report;
}

}  // namespace lamens
