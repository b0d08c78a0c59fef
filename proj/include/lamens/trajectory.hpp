#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lamens/field.hpp"
#include "lamens/lame_semigroup.hpp"

namespace lamens {

/// One row of the diagnostics table. Column order on disk:
/// t, energy, enstrophy, div_l2, u_max, h1_sq, hk_sq..., picard_iters, dt.
struct DiagnosticRecord {
  double t = 0.0;
  double energy = 0.0;     ///< 1/2 ||u||^2
  double enstrophy = 0.0;  ///< 1/2 ||grad u||^2
  double div_l2 = 0.0;
  double u_max = 0.0;
  double h1_sq = 0.0;
  std::vector<double> hk_sq;
  int picard_iters = 0;
  double dt = 0.0;
};

struct DiagnosticSeries {
  std::vector<int> hk_orders;
  std::vector<DiagnosticRecord> rows;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
};

struct StepDiagnostics {
  double t_start = 0.0;
  double dt = 0.0;
  int iterations = 0;
  /// ||u^{j+1} - u^{j}|| for every Picard iteration.
  std::vector<double> residuals;
  /// Largest residuals[j+1]/residuals[j] above the round-off floor; 0 when
  /// fewer than two measurable residuals exist.
  double max_ratio = 0.0;
  bool converged = false;
};

enum class TerminationStatus { Completed, BlowUp, StepTooSmall };

std::string_view to_string(TerminationStatus status) noexcept;

struct Snapshot {
  double t = 0.0;
  VectorField field;
};

/// Time-ordered solution record. Every stored field carries both views.
struct Trajectory {
  LameParams params;
  std::vector<Snapshot> snapshots;
  DiagnosticSeries series;
  std::vector<StepDiagnostics> steps;
  TerminationStatus status = TerminationStatus::Completed;
  std::string message;
  std::vector<std::string> warnings;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
  bool completed() const noexcept { return status == TerminationStatus::Completed; }
};

}  // namespace lamens
