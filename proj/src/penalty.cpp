#include "lamens/penalty.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <future>
#include <sstream>
#include <utility>

#include "lamens/diagnostics.hpp"
#include "lamens/error.hpp"
#include "lamens/spectral_ops.hpp"

namespace lamens {

namespace {

std::optional<double> loglog_rate(const std::vector<double>& lambdas, const std::vector<double>& values) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] > 0.0 && values[i] > 0.0 && std::isfinite(values[i])) {
      xs.push_back(std::log(1.0 / lambdas[i]));
      ys.push_back(std::log(values[i]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

const Snapshot* snapshot_at(const Trajectory& traj, double t) {
  for (const auto& snap : traj.snapshots) {
    if (std::abs(snap.t - t) <= 1e-12 * std::max(1.0, std::abs(t))) return &snap;
  }
  return nullptr;
}

SweepEntry run_entry(const VectorField& phi, double t_end, double mu, double lambda, const StepperConfig& config,
                     const Trajectory& reference) {
  SweepEntry entry;
  entry.lambda = lambda;
  try {
    const LameParams params = LameParams::make(mu, lambda);
    const Trajectory traj = integrate(phi, t_end, params, config);
    entry.status = traj.status;
    entry.final_time = traj.final_snapshot().t;
    entry.final_field = traj.final_snapshot().field;
    for (const auto& row : traj.series.rows) {
      entry.energy_times.push_back(row.t);
      entry.energy_series.push_back(row.energy);
    }
    entry.div_l2 = l2_norm(divergence(entry.final_field));
    entry.pressure = pressure_from_divergence(entry.final_field, params);
    entry.pressure_l2 = l2_norm(entry.pressure);
    entry.pressure_checksum = field_checksum(entry.pressure);
    for (const auto& snap : traj.snapshots) {
      const Snapshot* ref = snapshot_at(reference, snap.t);
      if (ref == nullptr) continue;
      entry.div_history.push_back(l2_norm(divergence(snap.field)));
      entry.l2_error_sup = std::max(entry.l2_error_sup, l2_norm(combine(1.0, snap.field, -1.0, ref->field)));
    }
    const Snapshot* ref_final = snapshot_at(reference, entry.final_time);
    if (ref_final != nullptr) {
      entry.l2_error_vs_reference = l2_norm(combine(1.0, entry.final_field, -1.0, ref_final->field));
    } else {
      entry.l2_error_vs_reference = std::nan("");
    }
    entry.ok = traj.completed() && std::isfinite(entry.l2_error_vs_reference);
    if (!traj.completed()) entry.error = traj.message;
  } catch (const Error& e) {
    entry.ok = false;
    entry.error = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return entry;
}

}  // namespace

ScalarField pressure_from_divergence(const VectorField& u, const LameParams& params) {
  Field p = scaled(-params.penalty(), divergence(u));
  p.spectral_mut(0)[0] = Complex{};
  p.ensure_physical();
  return p;
}

ScalarField navier_stokes_pressure(const VectorField& u, const StepperConfig& config) {
  const Field n = nonlinear_term(u, config.dealias_enabled, config.skew_symmetric);
  const Field div_n = divergence(n);
  const Grid& g = u.grid();
  std::vector<std::vector<Complex>> out(1, std::vector<Complex>(g.spectral_size()));
  const auto dn = div_n.spectral(0);
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const Wavevector xi = g.symbol_wavevector(s);
    const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (k2 > 0.0) out[0][s] = dn[s] / k2;
  }
  return to_physical(Field::from_spectral(g, std::move(out)));
}

Trajectory reference_ns_solve(const VectorField& phi, double t_end, double mu, const StepperConfig& config) {
  VectorField start = to_spectral(phi);
  std::vector<std::string> warnings;
  const double norm = l2_norm(start);
  const double div = l2_norm(divergence(start));
  if (div > 1e-12 * std::max(norm, 1.0)) {
    std::ostringstream msg;
    msg << "initial field has ||div|| = " << div << "; projected onto divergence-free fields";
    warnings.push_back(msg.str());
    start = project_solenoidal(start);
  }
  Trajectory traj = integrate(start, t_end, FlowModel::navier_stokes(mu), config);
  traj.warnings.insert(traj.warnings.begin(), warnings.begin(), warnings.end());
  return traj;
}

SweepReport lambda_sweep(const VectorField& phi, double t_end, double mu, const std::vector<double>& lambdas,
                         const StepperConfig& config) {
  if (lambdas.empty()) throw Error(ErrorKind::InvalidArgument, "lambda list is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < -mu) {
      throw Error(ErrorKind::ConstraintViolation, "every lambda must satisfy lambda + mu >= 0");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw Error(ErrorKind::ConstraintViolation, "lambda list must be strictly increasing");
    }
  }

  SweepReport report;
  report.mu = mu;
  report.t_end = t_end;
  const VectorField start = to_spectral(phi);
  const Trajectory reference = reference_ns_solve(start, t_end, mu, config);
  report.warnings = reference.warnings;
  if (!reference.completed()) {
    report.warnings.push_back("reference solver stopped early: " + reference.message);
  }
  report.reference_final = reference.final_snapshot().field;
  report.reference_pressure = navier_stokes_pressure(report.reference_final, config);
  for (const auto& row : reference.series.rows) report.reference_energy_series.push_back(row.energy);

  for (double lambda : lambdas) {
    // exp(-(lambda+2mu)|k|^2 dt) is already 0 in double precision at |k| = 1.
    if ((lambda + 2.0 * mu) * config.dt_init > 700.0) {
      std::ostringstream msg;
      msg << "lambda=" << lambda << ": compressive decay underflows to 0 at every nonzero mode for dt="
          << config.dt_init << " (harmless, the compressive part is projected out)";
      report.warnings.push_back(msg.str());
    }
  }

  const int threads = configured_threads();
  if (threads > 1) {
    std::vector<std::future<SweepEntry>> pending;
    for (double lambda : lambdas) {
      if (static_cast<int>(pending.size()) >= threads) {
        report.entries.push_back(pending.front().get());
        pending.erase(pending.begin());
      }
      pending.push_back(std::async(std::launch::async, run_entry, std::cref(start), t_end, mu, lambda,
                                   std::cref(config), std::cref(reference)));
    }
    for (auto& f : pending) report.entries.push_back(f.get());
  } else {
    for (double lambda : lambdas) report.entries.push_back(run_entry(start, t_end, mu, lambda, config, reference));
  }

  std::vector<double> ok_lambdas, divs, errors;
  for (const auto& e : report.entries) {
    if (!e.ok) continue;
    ok_lambdas.push_back(e.lambda);
    divs.push_back(e.div_l2);
    errors.push_back(e.l2_error_vs_reference);
  }
  report.div_rate = loglog_rate(ok_lambdas, divs);
  report.error_rate = loglog_rate(ok_lambdas, errors);

  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    const auto& a = report.entries[i];
    const auto& b = report.entries[i + 1];
    if (!a.ok || !b.ok || a.pressure_l2 == 0.0) continue;
    report.pressure_increments.push_back(l2_norm(combine(1.0, b.pressure, -1.0, a.pressure)) / a.pressure_l2);
  }
  return report;
}

Extrapolation extrapolate_lambda(const SweepReport& report) {
  std::vector<const SweepEntry*> ok;
  for (const auto& e : report.entries) {
    if (e.ok) ok.push_back(&e);
  }
  if (ok.size() < 2) {
    throw Error(ErrorKind::InsufficientEntries, "extrapolation needs at least two successful lambda entries");
  }
  const SweepEntry& low = *ok[ok.size() - 2];
  const SweepEntry& high = *ok.back();
  if (!(high.lambda > 0.0 && low.lambda > 0.0)) {
    throw Error(ErrorKind::InsufficientEntries, "extrapolation in 1/lambda needs positive lambda values");
  }
  Extrapolation out;
  out.lambda_low = low.lambda;
  out.lambda_high = high.lambda;
  const double span = high.lambda - low.lambda;
  out.field = to_physical(combine(high.lambda / span, to_spectral(high.final_field), -low.lambda / span,
                                  to_spectral(low.final_field)));
  if (report.reference_final.components() == out.field.components()) {
    const Field ref = to_spectral(report.reference_final);
    if (ref.grid() == out.field.grid()) {
      out.error_vs_reference = l2_norm(combine(1.0, out.field, -1.0, ref));
      out.largest_lambda_error = l2_norm(combine(1.0, to_spectral(high.final_field), -1.0, ref));
      out.reduction = out.largest_lambda_error > 0.0 ? out.error_vs_reference / out.largest_lambda_error : 0.0;
    }
  }
  return out;
}

std::string field_checksum(const Field& f) {
  const Field phys = to_physical(f);
  std::uint64_t hash = 1469598103934665603ULL;
  for (std::size_t c = 0; c < phys.components(); ++c) {
    for (double v : phys.physical(c)) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 1099511628211ULL;
      }
    }
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

}  // namespace lamens
