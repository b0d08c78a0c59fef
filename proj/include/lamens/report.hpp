#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamens/config.hpp"
#include "lamens/kernels.hpp"
#include "lamens/penalty.hpp"
#include "lamens/trajectory.hpp"

namespace lamens {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// "%.17g", the round-trip format used in every text output.
std::string format_number(double v);

/// Header t,energy,enstrophy,div_l2,u_max,h1_sq,h<k>_sq...,picard_iters,dt.
std::string diagnostics_csv(const DiagnosticSeries& series);

nlohmann::json config_json(const RunConfig& config);
nlohmann::json trajectory_summary_json(const Trajectory& traj);
nlohmann::json sweep_report_json(const SweepReport& report);
nlohmann::json bound_report_json(const BoundFitReport& report);
/// One row per sample: lambda,direction,r,t,scaled_value.
std::string bound_samples_csv(const BoundFitReport& report);

/// Writes text to path, creating parent directories. Throws Error(Io).
void write_text(const std::filesystem::path& path, const std::string& text);

/// Records every file written into a run directory and emits manifest.json.
/// Paths are stored relative to the run directory; each appears once.
class RunManifest {
public:
  RunManifest(std::filesystem::path run_dir, std::string command, nlohmann::json config);

  const std::filesystem::path& run_dir() const noexcept { return run_dir_; }
  std::filesystem::path path_for(const std::string& relative) const { return run_dir_ / relative; }

  /// Writes text into the run directory and records it.
  void write_file(const std::string& relative, const std::string& text);
  /// Records a file some other writer produced. Throws Error(Io) if missing.
  void record(const std::string& relative);
  void set_status(std::string status) { status_ = std::move(status); }
  void add_note(const std::string& key, nlohmann::json value) { notes_[key] = std::move(value); }

  const std::vector<std::string>& files() const noexcept { return files_; }
  /// Writes manifest.json (which lists itself) and returns its path.
  std::filesystem::path finish();

private:
  std::filesystem::path run_dir_;
  std::string command_;
  nlohmann::json config_;
  nlohmann::json notes_ = nlohmann::json::object();
  std::string status_ = "completed";
  std::string started_;
  std::vector<std::string> files_;
};

/// UTC wall time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now());

}  // namespace lamens
