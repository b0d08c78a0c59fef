#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lamens/grid.hpp"

namespace lamens {

/// A field with one or more real components on a Grid, carrying a physical
/// view (real samples), a spectral view (half-spectrum coefficients), or both.
///
/// Vector fields have grid.dim() components, scalar fields have one. Const
/// accessors throw when the requested view is absent; the mutable accessors
/// drop the other view so the two can never silently disagree.
class Field {
public:
  Field() = default;
  /// Zero field with both views present.
  Field(const Grid& grid, std::size_t components);

  static Field zeros_like(const Field& other) { return Field(other.grid(), other.components()); }
  static Field vector(const Grid& grid) { return Field(grid, static_cast<std::size_t>(grid.dim())); }
  static Field scalar(const Grid& grid) { return Field(grid, 1); }
  static Field from_physical(const Grid& grid, std::vector<std::vector<double>> samples);
  static Field from_spectral(const Grid& grid, std::vector<std::vector<Complex>> coefficients);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t components() const noexcept { return components_; }
  bool is_vector() const noexcept { return components_ == static_cast<std::size_t>(grid_.dim()); }

  bool has_physical() const noexcept { return has_physical_; }
  bool has_spectral() const noexcept { return has_spectral_; }

  std::span<const double> physical(std::size_t c) const;
  std::span<const Complex> spectral(std::size_t c) const;
  std::span<double> physical_mut(std::size_t c);
  std::span<Complex> spectral_mut(std::size_t c);

  /// Populate the missing view in place.
  void ensure_spectral();
  void ensure_physical();

private:
  Grid grid_ = Grid::make(2, 4);
  std::size_t components_ = 0;
  std::vector<std::vector<double>> physical_;
  std::vector<std::vector<Complex>> spectral_;
  bool has_physical_ = false;
  bool has_spectral_ = false;
};

using VectorField = Field;
using ScalarField = Field;

Field to_spectral(Field field);
Field to_physical(Field field);

/// a*x + b*y on the spectral view (result has only the spectral view).
Field combine(double a, const Field& x, double b, const Field& y);
Field scaled(double a, const Field& x);

/// Continuum-normalised squared L2 norm, (2*pi)^d * sum_k |c_k|^2 over the
/// full spectrum. Uses whichever view is present (spectral preferred).
double l2_norm_sq(const Field& field);
double l2_norm(const Field& field);
/// Same norm evaluated from physical samples, (2*pi)^d / N^d * sum |u|^2.
double physical_l2_norm_sq(const Field& field);
/// Grid maximum of the pointwise Euclidean magnitude.
double max_magnitude(const Field& field);

/// Throws Error(DimensionMismatch) when grids or component counts differ.
void require_compatible(const Field& a, const Field& b);

}  // namespace lamens
