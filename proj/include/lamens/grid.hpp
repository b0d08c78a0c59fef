#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace lamens {

using Complex = std::complex<double>;

/// Integer mode on the r2c half spectrum: k[0] in [0, N/2], k[1], k[2] in
/// (-N/2, N/2]. Unused trailing components are zero.
using Mode = std::array<int, 3>;

/// Real wavevector; unused trailing components are zero.
using Wavevector = std::array<double, 3>;

class Transform;

/// Periodic grid on [0, 2*pi)^dim with n points per axis.
///
/// Physical samples are stored with x1 fastest: p = i1 + n*(i2 + n*i3).
/// Spectral coefficients use the real-to-complex half layout along x1:
/// s = j1 + (n/2+1)*(i2 + n*i3), where j1 = k1 >= 0 and i2, i3 wrap the
/// signed wavenumbers. Coefficients are normalised so that
/// u(x) = sum_k c_k exp(i k.x).
class Grid {
public:
  /// Throws Error(InvalidArgument) unless dim is 2 or 3 and n is even and >= 4.
  static Grid make(int dim, int n);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  int half_n() const noexcept { return n_ / 2 + 1; }
  std::size_t physical_size() const noexcept { return physical_size_; }
  std::size_t spectral_size() const noexcept { return spectral_size_; }

  /// Signed wavenumber of a full-axis storage index.
  int wavenumber(int index) const noexcept { return index <= n_ / 2 ? index : index - n_; }
  /// Axis wavenumbers in increasing order: -N/2+1, ..., N/2.
  std::vector<int> axis_wavenumbers() const;

  Mode mode(std::size_t s) const noexcept;
  /// Spectral index of an integer mode, or -1 when it is not stored on this
  /// grid (k1 < 0 or any component outside the resolved range).
  std::ptrdiff_t spectral_index(const Mode& k) const noexcept;

  /// Wavevector used inside every operator symbol. Components sitting on the
  /// Nyquist frequency are mapped to zero so that symbols stay Hermitian
  /// consistent on the half spectrum.
  Wavevector symbol_wavevector(std::size_t s) const noexcept;

  bool is_nyquist(const Mode& k) const noexcept;

  /// Multiplicity of a half-spectrum entry in the full spectrum (1 or 2).
  double hermitian_weight(std::size_t s) const noexcept;

  double coordinate(int index) const noexcept;
  std::array<double, 3> position(std::size_t p) const noexcept;

  /// Box volume (2*pi)^dim.
  double volume() const noexcept;

  const Transform& transform() const noexcept { return *transform_; }

  /// Grid used for alias-free quadratic products: M >= 3N/2, M even.
  Grid padded() const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_;
  }

private:
  Grid(int dim, int n);

  int dim_ = 0;
  int n_ = 0;
  std::size_t physical_size_ = 0;
  std::size_t spectral_size_ = 0;
  std::shared_ptr<const Transform> transform_;
};

/// FFTW-backed real transforms for one grid. Plans are shared between all
/// Grid copies of the same shape; execution is thread safe.
class Transform {
public:
  Transform(int dim, int n);
  ~Transform();
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;

  /// Physical samples -> normalised coefficients (divided by n^dim).
  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Coefficients -> physical samples. The input is not modified.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
  std::size_t physical_size_;
  std::size_t spectral_size_;
};

/// Internal parallelism cap read from LAMENS_THREADS (default 1).
int configured_threads();

}  // namespace lamens
