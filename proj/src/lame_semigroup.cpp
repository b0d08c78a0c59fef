#include "lamens/lame_semigroup.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "lamens/diagnostics.hpp"
#include "lamens/error.hpp"

namespace lamens {

namespace {

double norm_sq(const Wavevector& xi) { return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]; }

// out = a_shear * Q v + a_comp * P v at every mode; factors(|xi|^2) yields
// the (a_shear, a_comp) pair.
template <class Factors>
VectorField apply_split(const VectorField& v, const Grid& g, const Factors& factors) {
  Field out = to_spectral(v);
  const int dim = g.dim();
  std::vector<std::span<Complex>> comps;
  for (int d = 0; d < dim; ++d) comps.push_back(out.spectral_mut(static_cast<std::size_t>(d)));
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const Wavevector xi = g.symbol_wavevector(s);
    const double k2 = norm_sq(xi);
    const auto [a_shear, a_comp] = factors(k2);
    Complex dot{};
    if (k2 > 0.0) {
      for (int d = 0; d < dim; ++d) dot += xi[d] * comps[d][s];
      dot /= k2;
    }
    for (int d = 0; d < dim; ++d) {
      const Complex compressible = xi[d] * dot;
      comps[d][s] = a_shear * (comps[d][s] - compressible) + a_comp * compressible;
    }
  }
  return out;
}

}  // namespace

LameParams LameParams::make(double mu, double lambda) {
  std::ostringstream problems;
  if (!(mu > 0.0)) problems << "mu must be positive (got " << mu << "); ";
  if (!(lambda + mu >= 0.0)) {
    problems << "Lamé constants must satisfy lambda + mu >= 0 (got lambda=" << lambda << ", mu=" << mu << ")";
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw Error(ErrorKind::ConstraintViolation, msg);
  return LameParams{mu, lambda};
}

PropagatorSymbol propagator_factors(double xi_norm_sq, double t, const LameParams& params) {
  return PropagatorSymbol{std::exp(-params.mu * xi_norm_sq * t),
                          std::exp(-params.compressive_rate() * xi_norm_sq * t)};
}

ModeMatrix propagator_symbol(const Wavevector& xi, double t, const LameParams& params, int dim) {
  const PropagatorSymbol f = propagator_factors(norm_sq(xi), t, params);
  const ModeMatrix p = ModeProjector::compressible(xi, dim);
  if (norm_sq(xi) == 0.0) return ModeMatrix::Identity(dim, dim);
  return f.shear * (ModeMatrix::Identity(dim, dim) - p) + f.compressive * p;
}

VectorField apply_semigroup(const VectorField& phi, double t, const LameParams& params) {
  if (!phi.is_vector()) throw Error(ErrorKind::DimensionMismatch, "semigroup acts on vector fields");
  if (t == 0.0) return to_spectral(phi);
  return apply_split(phi, phi.grid(), [&](double k2) {
    const PropagatorSymbol f = propagator_factors(k2, t, params);
    return std::pair{f.shear, f.compressive};
  });
}

VectorField poisson_psi(const VectorField& phi) { return scaled(-1.0, project_compressible(phi)); }

RepresentationResult semigroup_via_representation(const VectorField& phi, double t, const LameParams& params,
                                                  SignConvention convention) {
  const VectorField reference = apply_semigroup(phi, t, params);
  VectorField psi = poisson_psi(phi);
  if (convention == SignConvention::Corrected) psi = scaled(-1.0, psi);

  const Grid& g = phi.grid();
  const Field src = to_spectral(phi);
  std::vector<std::vector<Complex>> out(src.components(), std::vector<Complex>(g.spectral_size()));
  for (std::size_t c = 0; c < src.components(); ++c) {
    const auto ph = src.spectral(c);
    const auto ps = psi.spectral(c);
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      const PropagatorSymbol f = propagator_factors(norm_sq(g.symbol_wavevector(s)), t, params);
      out[c][s] = f.shear * ph[s] + (f.compressive - f.shear) * ps[s];
    }
  }
  RepresentationResult result{Field::from_spectral(g, std::move(out)), 0.0};
  const double ref_norm = l2_norm(reference);
  const double diff = l2_norm(combine(1.0, result.field, -1.0, reference));
  result.relative_discrepancy = ref_norm > 0.0 ? diff / ref_norm : diff;
  return result;
}

double smoothing_ratio(const VectorField& phi, double t, const LameParams& params, int m) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidArgument, "smoothing_ratio needs 0 < t <= 1");
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "Sobolev order must be nonnegative");
  const double denom = sobolev_norm_sq(phi, m);
  if (denom == 0.0) throw Error(ErrorKind::InvalidArgument, "smoothing_ratio needs a nonzero field");
  const double numer = sobolev_norm_sq(apply_semigroup(phi, t, params), m + 1);
  return std::sqrt(t) * std::sqrt(numer / denom);
}

}  // namespace lamens
