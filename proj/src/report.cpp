#include "lamens/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace lamens {

namespace {

// JSON has no NaN or infinity; emit null for them.
nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json numbers(const std::vector<double>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (double v : vs) out.push_back(number(v));
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string diagnostics_csv(const DiagnosticSeries& series) {
  std::string out = "t,energy,enstrophy,div_l2,u_max,h1_sq";
  for (int k : series.hk_orders) out += ",h" + std::to_string(k) + "_sq";
  out += ",picard_iters,dt\n";
  for (const auto& r : series.rows) {
    out += format_number(r.t) + ',' + format_number(r.energy) + ',' + format_number(r.enstrophy) + ',' +
           format_number(r.div_l2) + ',' + format_number(r.u_max) + ',' + format_number(r.h1_sq);
    for (double h : r.hk_sq) out += ',' + format_number(h);
    out += ',' + std::to_string(r.picard_iters) + ',' + format_number(r.dt) + '\n';
  }
  return out;
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["dim"] = c.dim;
  j["grid_n"] = c.grid_n;
  j["mu"] = c.mu;
  if (c.sweep_mode()) {
    j["lambda_list"] = c.lambda_list;
  } else if (c.lambda) {
    j["lambda"] = *c.lambda;
  }
  j["t_end"] = c.t_end;
  j["dt_init"] = c.stepper.dt_init;
  j["dt_min"] = c.stepper.dt_min;
  j["picard_tol"] = c.stepper.picard_tol;
  j["picard_max"] = c.stepper.picard_max;
  j["cfl_constant"] = c.stepper.cfl_constant;
  j["dealias"] = c.stepper.dealias_enabled;
  j["skew_symmetric"] = c.stepper.skew_symmetric;
  j["initial_condition"] = std::string(to_string(c.initial_condition));
  j["amplitude"] = c.amplitude;
  j["seed"] = c.seed;
  j["spectrum_slope"] = c.spectrum_slope;
  if (!c.snapshot_path.empty()) j["snapshot_path"] = c.snapshot_path;
  j["output_dir"] = c.output_dir;
  j["snapshot_every"] = c.stepper.snapshot_every;
  j["abort_h1_factor"] = c.stepper.abort_h1_factor;
  j["hk_orders"] = c.stepper.hk_orders;
  return j;
}

nlohmann::json trajectory_summary_json(const Trajectory& traj) {
  nlohmann::json j;
  j["status"] = std::string(to_string(traj.status));
  j["message"] = traj.message;
  j["mu"] = traj.params.mu;
  j["lambda"] = traj.params.lambda;
  j["final_time"] = traj.snapshots.empty() ? 0.0 : traj.final_snapshot().t;
  j["accepted_steps"] = traj.steps.size();
  double max_ratio = 0.0;
  int max_iters = 0;
  for (const auto& s : traj.steps) {
    max_ratio = std::max(max_ratio, s.max_ratio);
    max_iters = std::max(max_iters, s.iterations);
  }
  j["max_picard_ratio"] = max_ratio;
  j["max_picard_iterations"] = max_iters;
  if (!traj.series.empty()) {
    const auto& first = traj.series.rows.front();
    const auto& last = traj.series.rows.back();
    j["initial_energy"] = number(first.energy);
    j["final_energy"] = number(last.energy);
    j["final_div_l2"] = number(last.div_l2);
    j["final_u_max"] = number(last.u_max);
  }
  j["warnings"] = traj.warnings;
  return j;
}

nlohmann::json sweep_report_json(const SweepReport& report) {
  nlohmann::json j;
  j["mu"] = report.mu;
  j["t_end"] = report.t_end;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json r;
    r["lambda"] = e.lambda;
    r["ok"] = e.ok;
    r["status"] = std::string(to_string(e.status));
    if (!e.error.empty()) r["error"] = e.error;
    r["final_time"] = e.final_time;
    r["l2_error_vs_reference"] = number(e.l2_error_vs_reference);
    r["l2_error_sup"] = number(e.l2_error_sup);
    r["div_l2"] = number(e.div_l2);
    r["pressure_l2"] = number(e.pressure_l2);
    r["pressure_checksum"] = e.pressure_checksum;
    r["energy_times"] = numbers(e.energy_times);
    r["energy_series"] = numbers(e.energy_series);
    r["div_history"] = numbers(e.div_history);
    j["entries"].push_back(r);
  }
  j["div_rate"] = report.div_rate ? number(*report.div_rate) : nlohmann::json(nullptr);
  j["error_rate"] = report.error_rate ? number(*report.error_rate) : nlohmann::json(nullptr);
  j["pressure_increments"] = numbers(report.pressure_increments);
  j["reference_energy_series"] = numbers(report.reference_energy_series);
  j["warnings"] = report.warnings;
  return j;
}

nlohmann::json bound_report_json(const BoundFitReport& report) {
  nlohmann::json j;
  j["alpha_order"] = report.alpha_order;
  j["lambdas"] = report.lambdas;
  j["mus"] = report.mus;
  j["decay_c"] = numbers(report.decay_c);
  j["fitted_constants"] = numbers(report.fitted_constants);
  j["monotone_growth"] = report.monotone_growth;
  j["sample_description"] = report.sample_description;
  j["sample_count"] = report.samples.size();
  return j;
}

std::string bound_samples_csv(const BoundFitReport& report) {
  std::string out = "lambda,direction,r,t,scaled_value\n";
  for (const auto& s : report.samples) {
    out += format_number(s.lambda) + ',' + std::to_string(s.direction) + ',' + format_number(s.r) + ',' +
           format_number(s.t) + ',' + format_number(s.scaled_value) + '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest::RunManifest(std::filesystem::path run_dir, std::string command, nlohmann::json config)
    : run_dir_(std::move(run_dir)), command_(std::move(command)), config_(std::move(config)), started_(utc_timestamp()) {
  std::error_code ec;
  std::filesystem::create_directories(run_dir_, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create run directory " + run_dir_.string() + ": " + ec.message());
}

void RunManifest::write_file(const std::string& relative, const std::string& text) {
  write_text(run_dir_ / relative, text);
  record(relative);
}

void RunManifest::record(const std::string& relative) {
  if (!std::filesystem::exists(run_dir_ / relative)) {
    throw Error(ErrorKind::Io, "cannot record missing file " + (run_dir_ / relative).string());
  }
  if (std::find(files_.begin(), files_.end(), relative) == files_.end()) files_.push_back(relative);
}

std::filesystem::path RunManifest::finish() {
  const std::string name = "manifest.json";
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
  nlohmann::json j;
  j["artifact_version"] = kArtifactVersion;
  j["command"] = command_;
  j["config"] = config_;
  j["start_time"] = started_;
  j["end_time"] = utc_timestamp();
  j["termination_status"] = status_;
  j["files"] = files_;
  if (!notes_.empty()) j["notes"] = notes_;
  const auto path = run_dir_ / name;
  write_text(path, j.dump(2) + "\n");
  return path;
}

}  // namespace lamens
