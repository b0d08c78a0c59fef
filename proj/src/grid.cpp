#include "lamens/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "lamens/error.hpp"

namespace lamens {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const Transform> shared_transform(int dim, int n) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::weak_ptr<const Transform>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[{dim, n}];
  if (auto existing = slot.lock()) return existing;
  auto created = std::make_shared<const Transform>(dim, n);
  slot = created;
  return created;
}

}  // namespace

int configured_threads() {
  const char* env = std::getenv("LAMENS_THREADS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return value > 0 ? value : 1;
}

struct Transform::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

Transform::Transform(int dim, int n) : plans_(std::make_unique<Plans>()) {
  std::size_t phys = 1;
  for (int d = 0; d < dim; ++d) phys *= static_cast<std::size_t>(n);
  physical_size_ = phys;
  spectral_size_ = phys / static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);

  // FFTW is row-major with the last index contiguous, so x1 goes last.
  std::array<int, 3> dims{};
  for (int d = 0; d < dim; ++d) dims[d] = n;

  std::vector<double> real(physical_size_);
  std::vector<Complex> cplx(spectral_size_);
  auto* real_ptr = real.data();
  auto* cplx_ptr = reinterpret_cast<fftw_complex*>(cplx.data());

  std::lock_guard lock(planner_mutex());
  const int threads = configured_threads();
  if (threads > 1) {
    static const bool initialised = fftw_init_threads() != 0;
    if (initialised) fftw_plan_with_nthreads(threads);
  }
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->r2c = fftw_plan_dft_r2c(dim, dims.data(), real_ptr, cplx_ptr, flags);
  plans_->c2r = fftw_plan_dft_c2r(dim, dims.data(), cplx_ptr, real_ptr, flags);
  if (plans_->r2c == nullptr || plans_->c2r == nullptr) {
    throw Error(ErrorKind::InvalidArgument, "FFTW could not create a plan");
  }
}

Transform::~Transform() {
  std::lock_guard lock(planner_mutex());
  if (plans_->r2c != nullptr) fftw_destroy_plan(plans_->r2c);
  if (plans_->c2r != nullptr) fftw_destroy_plan(plans_->c2r);
}

void Transform::forward(std::span<const double> in, std::span<Complex> out) const {
  // r2c does not modify its input, the const_cast only satisfies the C API.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(physical_size_);
  for (auto& c : out) c *= scale;
}

void Transform::inverse(std::span<const Complex> in, std::span<double> out) const {
  // c2r destroys its input.
  std::vector<Complex> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
}

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  std::size_t phys = 1;
  for (int d = 0; d < dim; ++d) phys *= static_cast<std::size_t>(n);
  physical_size_ = phys;
  spectral_size_ = phys / static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
  transform_ = shared_transform(dim, n);
}

Grid Grid::make(int dim, int n) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::InvalidArgument,
                "grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (n % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "points per axis must be even (odd resolution " + std::to_string(n) + ")");
  }
  if (n < 4) {
    throw Error(ErrorKind::InvalidArgument,
                "points per axis must be at least 4, got " + std::to_string(n));
  }
  return Grid(dim, n);
}

std::vector<int> Grid::axis_wavenumbers() const {
  std::vector<int> ks;
  ks.reserve(static_cast<std::size_t>(n_));
  for (int k = -n_ / 2 + 1; k <= n_ / 2; ++k) ks.push_back(k);
  return ks;
}

Mode Grid::mode(std::size_t s) const noexcept {
  const auto h = static_cast<std::size_t>(half_n());
  const auto n = static_cast<std::size_t>(n_);
  Mode k{0, 0, 0};
  k[0] = static_cast<int>(s % h);
  std::size_t rest = s / h;
  for (int d = 1; d < dim_; ++d) {
    k[d] = wavenumber(static_cast<int>(rest % n));
    rest /= n;
  }
  return k;
}

std::ptrdiff_t Grid::spectral_index(const Mode& k) const noexcept {
  if (k[0] < 0 || k[0] > n_ / 2) return -1;
  std::ptrdiff_t index = 0;
  std::ptrdiff_t stride = half_n();
  for (int d = dim_ - 1; d >= 1; --d) {
    if (k[d] <= -n_ / 2 || k[d] > n_ / 2) return -1;
    const int stored = k[d] >= 0 ? k[d] : k[d] + n_;
    index = index * n_ + stored;
  }
  for (int d = dim_; d < 3; ++d) {
    if (k[d] != 0) return -1;
  }
  return index * stride + k[0];
}

bool Grid::is_nyquist(const Mode& k) const noexcept {
  for (int d = 0; d < dim_; ++d) {
    if (k[d] == n_ / 2) return true;
  }
  return false;
}

Wavevector Grid::symbol_wavevector(std::size_t s) const noexcept {
  const Mode k = mode(s);
  Wavevector xi{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) {
    xi[d] = k[d] == n_ / 2 ? 0.0 : static_cast<double>(k[d]);
  }
  return xi;
}

double Grid::hermitian_weight(std::size_t s) const noexcept {
  const int k1 = static_cast<int>(s % static_cast<std::size_t>(half_n()));
  return (k1 == 0 || k1 == n_ / 2) ? 1.0 : 2.0;
}

double Grid::coordinate(int index) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(index) / static_cast<double>(n_);
}

std::array<double, 3> Grid::position(std::size_t p) const noexcept {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const auto n = static_cast<std::size_t>(n_);
  for (int d = 0; d < dim_; ++d) {
    x[d] = coordinate(static_cast<int>(p % n));
    p /= n;
  }
  return x;
}

double Grid::volume() const noexcept {
  return std::pow(2.0 * std::numbers::pi, dim_);
}

Grid Grid::padded() const {
  return Grid(dim_, 2 * ((3 * n_ + 3) / 4));
}

}  // namespace lamens
