#include "lamens/spectral_ops.hpp"

#include <cstdlib>
#include <utility>

#include "lamens/error.hpp"

namespace lamens {

namespace {

double norm_sq(const Wavevector& xi) { return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]; }

void require_vector(const Field& u) {
  if (!u.is_vector()) {
    throw Error(ErrorKind::DimensionMismatch, "operation needs a vector field with grid.dim() components");
  }
}

// In place: v <- v - xi (xi . v) / |xi|^2 (solenoidal) or xi (xi . v)/|xi|^2.
template <bool Solenoidal>
Field project(const VectorField& u) {
  require_vector(u);
  Field out = to_spectral(u);
  const Grid& g = out.grid();
  const int dim = g.dim();
  std::vector<std::span<Complex>> comps;
  for (int d = 0; d < dim; ++d) comps.push_back(out.spectral_mut(static_cast<std::size_t>(d)));
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const Wavevector xi = g.symbol_wavevector(s);
    const double k2 = norm_sq(xi);
    if (k2 == 0.0) {
      if constexpr (!Solenoidal) {
        for (int d = 0; d < dim; ++d) comps[d][s] = Complex{};
      }
      continue;
    }
    Complex dot{};
    for (int d = 0; d < dim; ++d) dot += xi[d] * comps[d][s];
    dot /= k2;
    for (int d = 0; d < dim; ++d) {
      if constexpr (Solenoidal) {
        comps[d][s] -= xi[d] * dot;
      } else {
        comps[d][s] = xi[d] * dot;
      }
    }
  }
  return out;
}

}  // namespace

ModeMatrix ModeProjector::compressible(const Wavevector& xi, int dim) {
  ModeMatrix p = ModeMatrix::Zero(dim, dim);
  const double k2 = norm_sq(xi);
  if (k2 == 0.0) return p;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) p(i, j) = xi[i] * xi[j] / k2;
  }
  return p;
}

ModeMatrix ModeProjector::solenoidal(const Wavevector& xi, int dim) {
  return ModeMatrix::Identity(dim, dim) - compressible(xi, dim);
}

Field partial_derivative(const Field& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw Error(ErrorKind::InvalidArgument, "derivative axis out of range");
  Field src = to_spectral(f);
  std::vector<std::vector<Complex>> out(src.components(), std::vector<Complex>(g.spectral_size()));
  for (std::size_t c = 0; c < src.components(); ++c) {
    const auto cs = src.spectral(c);
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      out[c][s] = Complex{0.0, g.symbol_wavevector(s)[axis]} * cs[s];
    }
  }
  return Field::from_spectral(g, std::move(out));
}

ScalarField divergence(const VectorField& u) {
  require_vector(u);
  Field src = to_spectral(u);
  const Grid& g = src.grid();
  std::vector<Complex> out(g.spectral_size());
  for (int d = 0; d < g.dim(); ++d) {
    const auto cs = src.spectral(static_cast<std::size_t>(d));
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      out[s] += Complex{0.0, g.symbol_wavevector(s)[d]} * cs[s];
    }
  }
  std::vector<std::vector<Complex>> comps;
  comps.push_back(std::move(out));
  return Field::from_spectral(g, std::move(comps));
}

VectorField gradient(const ScalarField& f) {
  if (f.components() != 1) throw Error(ErrorKind::DimensionMismatch, "gradient needs a scalar field");
  Field src = to_spectral(f);
  const Grid& g = src.grid();
  const auto cs = src.spectral(0);
  std::vector<std::vector<Complex>> out(static_cast<std::size_t>(g.dim()), std::vector<Complex>(g.spectral_size()));
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const Wavevector xi = g.symbol_wavevector(s);
    for (int d = 0; d < g.dim(); ++d) out[d][s] = Complex{0.0, xi[d]} * cs[s];
  }
  return Field::from_spectral(g, std::move(out));
}

VectorField project_solenoidal(const VectorField& u) { return project<true>(u); }
VectorField project_compressible(const VectorField& u) { return project<false>(u); }

bool dealias_keeps(const Grid& grid, const Mode& k) noexcept {
  // |k| > N/3  <=>  3|k| > N
  for (int d = 0; d < grid.dim(); ++d) {
    if (3 * std::abs(k[d]) > grid.n()) return false;
  }
  return true;
}

Field dealias(const Field& f) {
  Field out = to_spectral(f);
  const Grid& g = out.grid();
  for (std::size_t c = 0; c < out.components(); ++c) {
    auto cs = out.spectral_mut(c);
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      if (!dealias_keeps(g, g.mode(s))) cs[s] = Complex{};
    }
  }
  return out;
}

std::vector<double> pad_to_physical(const Grid& grid, const Grid& padded, std::span<const Complex> coeffs) {
  std::vector<Complex> big(padded.spectral_size());
  const int half = grid.n() / 2;
  const int dim = grid.dim();
  for (std::size_t s = 0; s < grid.spectral_size(); ++s) {
    if (coeffs[s] == Complex{}) continue;
    const Mode k = grid.mode(s);
    // x1 is the half axis: a Nyquist k1 keeps its slot at +N/2 with half
    // weight, the implied conjugate supplies the -N/2 half.
    Complex value = coeffs[s];
    if (k[0] == half) value *= 0.5;
    int split_axes = 0;
    std::array<int, 2> axes{};
    for (int d = 1; d < dim; ++d) {
      if (k[d] == half) axes[split_axes++] = d;
    }
    const int variants = 1 << split_axes;
    const Complex part = value / static_cast<double>(variants);
    for (int v = 0; v < variants; ++v) {
      Mode target = k;
      for (int a = 0; a < split_axes; ++a) {
        if ((v >> a) & 1) target[axes[a]] = -half;
      }
      const auto index = padded.spectral_index(target);
      if (index >= 0) big[static_cast<std::size_t>(index)] += part;
    }
  }
  std::vector<double> out(padded.physical_size());
  padded.transform().inverse(big, out);
  return out;
}

std::vector<Complex> truncate_from_physical(const Grid& grid, const Grid& padded, std::span<const double> samples) {
  std::vector<Complex> big(padded.spectral_size());
  padded.transform().forward(samples, big);
  std::vector<Complex> out(grid.spectral_size());
  for (std::size_t s = 0; s < grid.spectral_size(); ++s) {
    const Mode k = grid.mode(s);
    if (!dealias_keeps(grid, k)) continue;
    out[s] = big[static_cast<std::size_t>(padded.spectral_index(k))];
  }
  return out;
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
  require_compatible(a, b);
  if (a.components() != 1) throw Error(ErrorKind::DimensionMismatch, "dealiased_product needs scalar fields");
  const Grid& g = a.grid();
  const Grid big = g.padded();
  const Field as = to_spectral(a);
  const Field bs = to_spectral(b);
  std::vector<double> pa = pad_to_physical(g, big, as.spectral(0));
  const std::vector<double> pb = pad_to_physical(g, big, bs.spectral(0));
  for (std::size_t p = 0; p < pa.size(); ++p) pa[p] *= pb[p];
  std::vector<std::vector<Complex>> out;
  out.push_back(truncate_from_physical(g, big, pa));
  return Field::from_spectral(g, std::move(out));
}

}  // namespace lamens
