#include "lamens/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string_view>
#include <vector>

namespace lamens {

namespace {

constexpr std::string_view kMagic = "LAMENS01";
constexpr std::size_t kHeaderSize = 8 + 3 * 4 + 3 * 8;

template <typename T>
void put(std::vector<char>& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.insert(out.end(), bytes.begin(), bytes.end());
}

template <typename T>
T get(const char* in) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), in, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const Field& u, double t, const LameParams& params, const std::filesystem::path& path) {
  const Field phys = u.has_physical() ? u : to_physical(u);
  const Grid& g = phys.grid();

  std::vector<char> buf;
  buf.reserve(kHeaderSize + phys.components() * g.physical_size() * 8);
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.n()));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(phys.components()));
  put<double>(buf, t);
  put<double>(buf, params.mu);
  put<double>(buf, params.lambda);
  for (std::size_t c = 0; c < phys.components(); ++c) {
    for (double v : phys.physical(c)) put<double>(buf, v);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

SnapshotData read_snapshot(const std::filesystem::path& path, const std::optional<Grid>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open snapshot " + path.string());
  const std::vector<char> buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  if (buf.size() < kMagic.size() || std::string_view(buf.data(), kMagic.size()) != kMagic) {
    throw Error(ErrorKind::BadMagic, path.string() + " does not start with " + std::string(kMagic));
  }
  if (buf.size() < kHeaderSize) {
    throw Error(ErrorKind::TruncatedPayload, path.string() + ": header is incomplete");
  }
  const char* p = buf.data() + kMagic.size();
  const auto dim = get<std::uint32_t>(p);
  const auto n = get<std::uint32_t>(p + 4);
  const auto comps = get<std::uint32_t>(p + 8);
  SnapshotData data;
  data.t = get<double>(p + 12);
  data.params.mu = get<double>(p + 20);
  data.params.lambda = get<double>(p + 28);

  if ((dim != 2 && dim != 3) || n < 4 || n % 2 != 0 || n > 65536 || comps == 0 || comps > 3) {
    throw Error(ErrorKind::DimensionMismatch, path.string() + ": invalid header (dim=" + std::to_string(dim) +
                                                  ", n=" + std::to_string(n) + ", components=" +
                                                  std::to_string(comps) + ")");
  }
  const Grid grid = Grid::make(static_cast<int>(dim), static_cast<int>(n));
  if (expected && !(*expected == grid)) {
    throw Error(ErrorKind::DimensionMismatch,
                path.string() + ": snapshot grid is " + std::to_string(dim) + "D with n=" + std::to_string(n) +
                    ", expected " + std::to_string(expected->dim()) + "D with n=" + std::to_string(expected->n()));
  }

  const std::size_t count = grid.physical_size();
  const std::size_t payload = static_cast<std::size_t>(comps) * count * 8;
  if (buf.size() - kHeaderSize != payload) {
    throw Error(ErrorKind::TruncatedPayload, path.string() + ": payload has " +
                                                 std::to_string(buf.size() - kHeaderSize) + " bytes, header implies " +
                                                 std::to_string(payload));
  }

  std::vector<std::vector<double>> samples(comps, std::vector<double>(count));
  const char* q = buf.data() + kHeaderSize;
  for (auto& comp : samples) {
    for (double& v : comp) {
      v = get<double>(q);
      q += 8;
    }
  }
  data.field = Field::from_physical(grid, std::move(samples));
  return data;
}

}  // namespace lamens
