#pragma once

#include <cstdint>

#include "lamens/config.hpp"
#include "lamens/field.hpp"

namespace lamens {

/// (sin x1 cos x2, -cos x1 sin x2) scaled by amplitude.
VectorField taylor_green_2d(const Grid& grid, double amplitude = 1.0);

/// (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0) scaled by amplitude.
VectorField taylor_green_3d(const Grid& grid, double amplitude = 1.0);

/// Arnold-Beltrami-Childress flow with A = B = C = amplitude.
VectorField abc_flow(const Grid& grid, double amplitude = 1.0);

/// Divergence-free field with random phases, spectral energy ~ |k|^slope for
/// 1 <= |k| <= n/3, scaled so that max |u| = amplitude.
VectorField random_solenoidal(const Grid& grid, std::uint64_t seed, double slope, double amplitude = 1.0);

/// Initial field described by the config. snapshot_file data must match
/// the configured grid.
VectorField make_initial_condition(const RunConfig& config);

}  // namespace lamens
