#include "lamens/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "lamens/burgers.hpp"
#include "lamens/initial_conditions.hpp"
#include "lamens/report.hpp"
#include "lamens/snapshot.hpp"

namespace lamens {

namespace {

using nlohmann::json;

std::string indexed(const std::string& stem, std::size_t i, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06zu", i);
  return stem + buf + ext;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message, json extra = json::object()) {
  json record;
  record["error"] = kind;
  record["message"] = message;
  for (auto& [k, v] : extra.items()) record[k] = v;
  err << record.dump() << "\n";
}

std::filesystem::path output_dir_for(const RunConfig& cfg, const std::string& override_dir) {
  return override_dir.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(override_dir);
}

int run_simulate(const std::string& config_path, const std::string& override_dir, std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  if (cfg.sweep_mode()) {
    throw Error(ErrorKind::ConstraintViolation, "simulate needs a single lambda; use the sweep subcommand for lambda_list");
  }
  const LameParams params = LameParams::make(cfg.mu, *cfg.lambda);
  RunManifest manifest(output_dir_for(cfg, override_dir), "simulate", config_json(cfg));

  const VectorField phi = make_initial_condition(cfg);
  const Trajectory traj = integrate(phi, cfg.t_end, params, cfg.stepper);

  manifest.write_file("diagnostics.csv", diagnostics_csv(traj.series));
  std::filesystem::create_directories(manifest.path_for("snapshots"));
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const std::string rel = "snapshots/" + indexed("snapshot_", i, ".bin");
    write_snapshot(traj.snapshots[i].field, traj.snapshots[i].t, params, manifest.path_for(rel));
    manifest.record(rel);
  }
  json report = trajectory_summary_json(traj);
  manifest.write_file("report.json", report.dump(2) + "\n");
  manifest.set_status(std::string(to_string(traj.status)));
  manifest.finish();

  out << json{{"status", report["status"]}, {"final_time", report["final_time"]},
              {"output_dir", manifest.run_dir().string()}}
             .dump()
      << "\n";
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& override_dir, std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  const std::vector<double> lambdas = cfg.lambdas();
  RunManifest manifest(output_dir_for(cfg, override_dir), "sweep", config_json(cfg));

  const VectorField phi = make_initial_condition(cfg);
  const SweepReport report = lambda_sweep(phi, cfg.t_end, cfg.mu, lambdas, cfg.stepper);

  json j = sweep_report_json(report);
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    if (!e.ok) continue;
    // Each entry gets its own subdirectory.
    const std::string dir = indexed("lambda_", i, "");
    const LameParams params{cfg.mu, e.lambda};
    std::filesystem::create_directories(manifest.path_for(dir));
    write_snapshot(e.final_field, e.final_time, params, manifest.path_for(dir + "/final.bin"));
    manifest.record(dir + "/final.bin");
    write_snapshot(e.pressure, e.final_time, params, manifest.path_for(dir + "/pressure.bin"));
    manifest.record(dir + "/pressure.bin");
    j["entries"][i]["files"] = {dir + "/final.bin", dir + "/pressure.bin"};
  }
  const LameParams ref_params{cfg.mu, -cfg.mu};
  std::filesystem::create_directories(manifest.path_for("reference"));
  write_snapshot(report.reference_final, cfg.t_end, ref_params, manifest.path_for("reference/final.bin"));
  manifest.record("reference/final.bin");
  write_snapshot(report.reference_pressure, cfg.t_end, ref_params, manifest.path_for("reference/pressure.bin"));
  manifest.record("reference/pressure.bin");

  try {
    const Extrapolation ex = extrapolate_lambda(report);
    write_snapshot(ex.field, cfg.t_end, LameParams{cfg.mu, ex.lambda_high}, manifest.path_for("extrapolated.bin"));
    manifest.record("extrapolated.bin");
    j["extrapolation"] = {{"lambda_low", ex.lambda_low},
                          {"lambda_high", ex.lambda_high},
                          {"error_vs_reference", ex.error_vs_reference},
                          {"largest_lambda_error", ex.largest_lambda_error},
                          {"reduction", ex.reduction}};
  } catch (const Error& e) {
    j["extrapolation"] = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  }

  manifest.write_file("sweep_report.json", j.dump(2) + "\n");
  bool all_ok = true;
  for (const auto& e : report.entries) all_ok = all_ok && e.ok && e.status == TerminationStatus::Completed;
  std::string status = "completed";
  if (!all_ok) {
    for (const auto& e : report.entries) {
      if (e.status != TerminationStatus::Completed) status = std::string(to_string(e.status));
    }
  }
  manifest.set_status(status);
  manifest.finish();
  out << json{{"status", status}, {"entries", report.entries.size()}, {"output_dir", manifest.run_dir().string()}}
             .dump()
      << "\n";
  return 0;
}

struct KernelCheckOptions {
  int alpha = 0;
  std::vector<double> lambdas{0.0, 1.0, 10.0, 100.0};
  double mu = 1.0;
  double decay_c = 0.0;
  SampleSpec spec;
  std::string output_dir = "kernel_check";
};

int run_kernel_check(const KernelCheckOptions& opt, std::ostream& out) {
  std::vector<LameParams> params;
  for (double l : opt.lambdas) params.push_back(LameParams::make(opt.mu, l));
  SampleSpec spec = opt.spec;
  if (opt.decay_c > 0.0) spec.decay_c = opt.decay_c;

  json cfg{{"alpha", opt.alpha}, {"lambdas", opt.lambdas}, {"mu", opt.mu}, {"r_max", spec.r_max},
           {"t_min", spec.t_min}, {"t_max", spec.t_max}, {"n_r", spec.n_r}, {"n_t", spec.n_t}};
  if (spec.decay_c) cfg["decay_c"] = *spec.decay_c;
  RunManifest manifest(opt.output_dir, "kernel-check", cfg);
  const BoundFitReport report = verify_gaussian_bound(opt.alpha, params, spec);
  manifest.write_file("bound_report.json", bound_report_json(report).dump(2) + "\n");
  manifest.write_file("bound_samples.csv", bound_samples_csv(report));
  manifest.finish();
  out << json{{"status", "completed"}, {"fitted_constants", report.fitted_constants},
              {"output_dir", manifest.run_dir().string()}}
             .dump()
      << "\n";
  return 0;
}

int run_compare(const std::string& a_path, const std::string& b_path, const std::string& output, std::ostream& out) {
  const SnapshotData a = read_snapshot(a_path);
  const SnapshotData b = read_snapshot(b_path, a.field.grid());
  require_compatible(a.field, b.field);
  Field fa = to_spectral(a.field);
  Field fb = to_spectral(b.field);
  const Field diff = to_physical(combine(1.0, fa, -1.0, fb));
  double max_abs = 0.0;
  for (std::size_t c = 0; c < a.field.components(); ++c) {
    const auto pa = a.field.physical(c);
    const auto pb = b.field.physical(c);
    for (std::size_t i = 0; i < pa.size(); ++i) max_abs = std::max(max_abs, std::abs(pa[i] - pb[i]));
  }
  const double diff_l2 = l2_norm(diff);
  const double ref = l2_norm(fb);
  json j{{"a", a_path},          {"b", b_path},       {"t_a", a.t},
         {"t_b", b.t},           {"l2_diff", diff_l2}, {"relative_l2_diff", ref > 0.0 ? json(diff_l2 / ref) : json(nullptr)},
         {"max_abs_diff", max_abs}};
  if (!output.empty()) write_text(output, j.dump(2) + "\n");
  out << j.dump() << "\n";
  return 0;
}

struct BurgersOptions {
  int dim = 2;
  int n = 64;
  double mu = 1.0;
  double t = 0.5;
  double offset = 2.0;
  bool integrate = false;
  double dt = 1e-3;
  std::string output_dir = "burgers_oracle";
};

int run_burgers(const BurgersOptions& opt, std::ostream& out) {
  const Grid grid = Grid::make(opt.dim, opt.n);
  const LameParams params = LameParams::make(opt.mu, -opt.mu);
  json cfg{{"dim", opt.dim}, {"n", opt.n}, {"mu", opt.mu}, {"t", opt.t}, {"offset", opt.offset},
           {"integrate", opt.integrate}, {"dt", opt.dt}};
  RunManifest manifest(opt.output_dir, "burgers-oracle", cfg);

  const ScalarField theta0 = cosine_theta(grid, opt.offset);
  const VectorField exact = cole_hopf_oracle(theta0, opt.mu, opt.t);
  write_snapshot(exact, opt.t, params, manifest.path_for("oracle.bin"));
  manifest.record("oracle.bin");

  json report{{"t", opt.t}, {"oracle_l2", l2_norm(exact)}};
  if (opt.integrate) {
    StepperConfig sc;
    sc.dt_init = opt.dt;
    sc.cfl_constant = 1e9;  // fixed step
    sc.snapshot_every = 1 << 30;
    const Trajectory traj = integrate(cole_hopf_oracle(theta0, opt.mu, 0.0), opt.t, params, sc);
    manifest.write_file("diagnostics.csv", diagnostics_csv(traj.series));
    write_snapshot(traj.final_snapshot().field, traj.final_snapshot().t, params, manifest.path_for("numeric.bin"));
    manifest.record("numeric.bin");
    const double err = l2_norm(combine(1.0, traj.final_snapshot().field, -1.0, exact));
    report["integration"] = trajectory_summary_json(traj);
    report["l2_error"] = err;
    manifest.set_status(std::string(to_string(traj.status)));
  }
  manifest.write_file("report.json", report.dump(2) + "\n");
  manifest.finish();
  report["output_dir"] = manifest.run_dir().string();
  out << report.dump() << "\n";
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inertia Lamé / penalty Navier-Stokes toolkit", "lamens"};
  app.require_subcommand(1);

  std::string config_path;
  std::string override_dir;
  auto* simulate = app.add_subcommand("simulate", "Integrate one configuration");
  simulate->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--output-dir", override_dir, "Override output_dir from the config");

  auto* sweep = app.add_subcommand("sweep", "Run a lambda ladder against the reference solver");
  sweep->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--output-dir", override_dir, "Override output_dir from the config");

  KernelCheckOptions kc;
  auto* kernel = app.add_subcommand("kernel-check", "Sample the Gaussian bound of the free-space kernel");
  kernel->add_option("--alpha", kc.alpha, "Derivative order 0..2")->check(CLI::Range(0, 2));
  kernel->add_option("--lambdas", kc.lambdas, "Comma-separated lambda values")->delimiter(',');
  kernel->add_option("--mu", kc.mu, "Shear viscosity");
  kernel->add_option("--decay-c", kc.decay_c, "Decay constant c (default 1/(16 mu))");
  kernel->add_option("--r-max", kc.spec.r_max, "Largest radius");
  kernel->add_option("--t-min", kc.spec.t_min, "Smallest time");
  kernel->add_option("--t-max", kc.spec.t_max, "Largest time");
  kernel->add_option("--n-r", kc.spec.n_r, "Radial samples");
  kernel->add_option("--n-t", kc.spec.n_t, "Time samples");
  kernel->add_option("--output-dir", kc.output_dir, "Output directory");

  std::string cmp_a, cmp_b, cmp_out;
  auto* compare = app.add_subcommand("compare", "Compare two snapshot files");
  compare->add_option("a", cmp_a, "First snapshot")->required()->check(CLI::ExistingFile);
  compare->add_option("b", cmp_b, "Second snapshot")->required()->check(CLI::ExistingFile);
  compare->add_option("--output", cmp_out, "Also write the comparison JSON here");

  BurgersOptions bo;
  auto* burgers = app.add_subcommand("burgers-oracle", "Cole-Hopf closed form, optionally against the stepper");
  burgers->add_option("--dim", bo.dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  burgers->add_option("--n", bo.n, "Grid points per axis");
  burgers->add_option("--mu", bo.mu, "Viscosity");
  burgers->add_option("--t", bo.t, "Evaluation time");
  burgers->add_option("--offset", bo.offset, "theta0 = offset + cos x1");
  burgers->add_flag("--integrate", bo.integrate, "Also run the stepper with lambda = -mu");
  burgers->add_option("--dt", bo.dt, "Fixed step for --integrate");
  burgers->add_option("--output-dir", bo.output_dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* scope = &app;
    for (auto* sub : app.get_subcommands()) scope = sub;
    std::vector<std::string> flags;
    for (const auto* opt : scope->get_options()) flags.push_back(opt->get_name());
    std::vector<std::string> subcommands;
    for (const auto* sub : app.get_subcommands({})) subcommands.push_back(sub->get_name());
    emit_error(err, "UsageError", e.what(), {{"valid_flags", flags}, {"subcommands", subcommands}});
    return 2;
  }

  try {
    if (*simulate) return run_simulate(config_path, override_dir, out);
    if (*sweep) return run_sweep(config_path, override_dir, out);
    if (*kernel) return run_kernel_check(kc, out);
    if (*compare) return run_compare(cmp_a, cmp_b, cmp_out, out);
    if (*burgers) return run_burgers(bo, out);
  } catch (const ConfigError& e) {
    json violations = json::array();
    for (const auto& v : e.violations()) {
      violations.push_back({{"kind", std::string(to_string(v.kind))}, {"key", v.key}, {"message", v.message}});
    }
    emit_error(err, std::string(to_string(e.kind())), e.what(), {{"violations", violations}});
    return 1;
  } catch (const Error& e) {
    emit_error(err, std::string(to_string(e.kind())), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "Internal", e.what());
    return 1;
  }
  return 2;
}

}  // namespace lamens
