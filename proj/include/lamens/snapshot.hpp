#pragma once

#include <filesystem>
#include <optional>

#include "lamens/error.hpp"
#include "lamens/field.hpp"
#include "lamens/lame_semigroup.hpp"

namespace lamens {

/// Binary layout: "LAMENS01", u32 dim, u32 n, u32 components, f64 t, mu,
/// lambda, then the physical samples component after component (x1 fastest).
/// All values little-endian.
struct SnapshotData {
  Field field;
  double t = 0.0;
  LameParams params;
};

void write_snapshot(const Field& u, double t, const LameParams& params, const std::filesystem::path& path);

/// Throws Error(BadMagic), Error(TruncatedPayload), Error(Io), or
/// Error(DimensionMismatch) when expected is given and differs from the file.
SnapshotData read_snapshot(const std::filesystem::path& path, const std::optional<Grid>& expected = std::nullopt);

}  // namespace lamens
