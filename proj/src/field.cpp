#include "lamens/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lamens/error.hpp"

namespace lamens {

Field::Field(const Grid& grid, std::size_t components)
    : grid_(grid),
      components_(components),
      physical_(components, std::vector<double>(grid.physical_size(), 0.0)),
      spectral_(components, std::vector<Complex>(grid.spectral_size(), Complex{})),
      has_physical_(true),
      has_spectral_(true) {}

Field Field::from_physical(const Grid& grid, std::vector<std::vector<double>> samples) {
  Field f;
  f.grid_ = grid;
  f.components_ = samples.size();
  for (const auto& comp : samples) {
    if (comp.size() != grid.physical_size()) {
      throw Error(ErrorKind::DimensionMismatch, "physical component has " +
                                                    std::to_string(comp.size()) + " samples, grid needs " +
                                                    std::to_string(grid.physical_size()));
    }
  }
  f.physical_ = std::move(samples);
  f.has_physical_ = true;
  return f;
}

Field Field::from_spectral(const Grid& grid, std::vector<std::vector<Complex>> coefficients) {
  Field f;
  f.grid_ = grid;
  f.components_ = coefficients.size();
  for (const auto& comp : coefficients) {
    if (comp.size() != grid.spectral_size()) {
      throw Error(ErrorKind::DimensionMismatch, "spectral component has " +
                                                    std::to_string(comp.size()) + " coefficients, grid needs " +
                                                    std::to_string(grid.spectral_size()));
    }
  }
  f.spectral_ = std::move(coefficients);
  f.has_spectral_ = true;
  return f;
}

std::span<const double> Field::physical(std::size_t c) const {
  if (!has_physical_) throw Error(ErrorKind::InvalidArgument, "field has no physical view");
  return physical_.at(c);
}

std::span<const Complex> Field::spectral(std::size_t c) const {
  if (!has_spectral_) throw Error(ErrorKind::InvalidArgument, "field has no spectral view");
  return spectral_.at(c);
}

std::span<double> Field::physical_mut(std::size_t c) {
  ensure_physical();
  has_spectral_ = false;
  return physical_.at(c);
}

std::span<Complex> Field::spectral_mut(std::size_t c) {
  ensure_spectral();
  has_physical_ = false;
  return spectral_.at(c);
}

void Field::ensure_spectral() {
  if (has_spectral_) return;
  if (!has_physical_) throw Error(ErrorKind::InvalidArgument, "field has no view to transform");
  spectral_.assign(components_, std::vector<Complex>(grid_.spectral_size()));
  for (std::size_t c = 0; c < components_; ++c) {
    grid_.transform().forward(physical_[c], spectral_[c]);
  }
  has_spectral_ = true;
}

void Field::ensure_physical() {
  if (has_physical_) return;
  if (!has_spectral_) throw Error(ErrorKind::InvalidArgument, "field has no view to transform");
  physical_.assign(components_, std::vector<double>(grid_.physical_size()));
  for (std::size_t c = 0; c < components_; ++c) {
    grid_.transform().inverse(spectral_[c], physical_[c]);
  }
  has_physical_ = true;
}

Field to_spectral(Field field) {
  field.ensure_spectral();
  return field;
}

Field to_physical(Field field) {
  field.ensure_physical();
  return field;
}

void require_compatible(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()) || a.components() != b.components()) {
    throw Error(ErrorKind::DimensionMismatch, "fields live on different grids or have different component counts");
  }
}

Field combine(double a, const Field& x, double b, const Field& y) {
  require_compatible(x, y);
  std::vector<std::vector<Complex>> out(x.components());
  for (std::size_t c = 0; c < x.components(); ++c) {
    const auto xs = x.spectral(c);
    const auto ys = y.spectral(c);
    out[c].resize(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) out[c][s] = a * xs[s] + b * ys[s];
  }
  return Field::from_spectral(x.grid(), std::move(out));
}

Field scaled(double a, const Field& x) {
  std::vector<std::vector<Complex>> out(x.components());
  for (std::size_t c = 0; c < x.components(); ++c) {
    const auto xs = x.spectral(c);
    out[c].resize(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) out[c][s] = a * xs[s];
  }
  return Field::from_spectral(x.grid(), std::move(out));
}

double l2_norm_sq(const Field& field) {
  if (!field.has_spectral()) return physical_l2_norm_sq(field);
  const Grid& g = field.grid();
  double sum = 0.0;
  for (std::size_t c = 0; c < field.components(); ++c) {
    const auto cs = field.spectral(c);
    for (std::size_t s = 0; s < cs.size(); ++s) sum += g.hermitian_weight(s) * std::norm(cs[s]);
  }
  return g.volume() * sum;
}

double l2_norm(const Field& field) { return std::sqrt(l2_norm_sq(field)); }

double physical_l2_norm_sq(const Field& field) {
  const Grid& g = field.grid();
  double sum = 0.0;
  for (std::size_t c = 0; c < field.components(); ++c) {
    for (double v : field.physical(c)) sum += v * v;
  }
  return g.volume() * sum / static_cast<double>(g.physical_size());
}

double max_magnitude(const Field& field) {
  Field phys = field;
  phys.ensure_physical();
  double best = 0.0;
  for (std::size_t p = 0; p < phys.grid().physical_size(); ++p) {
    double m = 0.0;
    for (std::size_t c = 0; c < phys.components(); ++c) {
      const double v = phys.physical(c)[p];
      m += v * v;
    }
    best = std::max(best, m);
  }
  return std::sqrt(best);
}

}  // namespace lamens
