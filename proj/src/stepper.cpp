#include "lamens/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include "lamens/diagnostics.hpp"
#include "lamens/error.hpp"
#include "lamens/spectral_ops.hpp"

namespace lamens {

namespace {

using Spectrum = std::vector<std::vector<Complex>>;

double norm_sq(const Wavevector& xi) { return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]; }

// Per-mode scalar multipliers for the shear (Q) and compressive (P) parts.
struct SplitMultiplier {
  std::vector<double> shear;
  std::vector<double> compressive;
};

// Exponential and phi-function tables for one (dt, params) pair.
struct StepOperator {
  SplitMultiplier decay;  // G(dt)
  SplitMultiplier first;  // dt * phi1(-a |xi|^2 dt)
  SplitMultiplier second; // dt * phi2(-a |xi|^2 dt)

  StepOperator(const Grid& g, double dt, const LameParams& params) {
    const std::size_t n = g.spectral_size();
    for (auto* m : {&decay, &first, &second}) {
      m->shear.resize(n);
      m->compressive.resize(n);
    }
    for (std::size_t s = 0; s < n; ++s) {
      const double k2 = norm_sq(g.symbol_wavevector(s));
      const double zs = -params.mu * k2 * dt;
      const double zc = -params.compressive_rate() * k2 * dt;
      decay.shear[s] = std::exp(zs);
      decay.compressive[s] = std::exp(zc);
      first.shear[s] = dt * phi1(zs);
      first.compressive[s] = dt * phi1(zc);
      second.shear[s] = dt * phi2(zs);
      second.compressive[s] = dt * phi2(zc);
    }
  }
};

Spectrum spectrum_of(const Field& f) {
  Spectrum out(f.components());
  for (std::size_t c = 0; c < f.components(); ++c) {
    const auto cs = f.spectral(c);
    out[c].assign(cs.begin(), cs.end());
  }
  return out;
}

// out += sign * M v, M = shear * Q + compressive * P at every mode.
void accumulate_split(const Grid& g, const SplitMultiplier& m, const Spectrum& v, double sign, Spectrum& out) {
  const int dim = g.dim();
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const Wavevector xi = g.symbol_wavevector(s);
    const double k2 = norm_sq(xi);
    Complex dot{};
    if (k2 > 0.0) {
      for (int d = 0; d < dim; ++d) dot += xi[d] * v[d][s];
      dot /= k2;
    }
    for (int d = 0; d < dim; ++d) {
      const Complex comp = xi[d] * dot;
      out[d][s] += sign * (m.shear[s] * (v[d][s] - comp) + m.compressive[s] * comp);
    }
  }
}

double spectrum_norm_sq(const Grid& g, const Spectrum& v) {
  double sum = 0.0;
  for (const auto& comp : v) {
    for (std::size_t s = 0; s < comp.size(); ++s) sum += g.hermitian_weight(s) * std::norm(comp[s]);
  }
  return g.volume() * sum;
}

double difference_norm(const Grid& g, const Spectrum& a, const Spectrum& b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t s = 0; s < a[c].size(); ++s) sum += g.hermitian_weight(s) * std::norm(a[c][s] - b[c][s]);
  }
  return std::sqrt(g.volume() * sum);
}

Spectrum evaluate_nonlinearity(const Grid& g, const Spectrum& u, const FlowModel& model, const StepperConfig& config) {
  Field f = Field::from_spectral(g, u);
  Field n = nonlinear_term(f, config.dealias_enabled, config.skew_symmetric);
  if (model.project_nonlinearity) n = project_solenoidal(n);
  return spectrum_of(n);
}

}  // namespace

double phi1(double z) {
  if (z == 0.0) return 1.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.5) {
    // sum_{k>=0} z^k / (k+2)!
    double term = 0.5;
    double sum = term;
    for (int k = 1; k < 30; ++k) {
      term *= z / static_cast<double>(k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

void StepperConfig::validate() const {
  std::ostringstream problems;
  if (!(dt_min > 0.0)) problems << "dt_min must be positive; ";
  if (!(dt_init > dt_min)) problems << "dt_init must exceed dt_min; ";
  if (!(picard_tol > 0.0)) problems << "picard_tol must be positive; ";
  if (picard_max < 2) problems << "picard_max must be at least 2; ";
  if (!(cfl_constant > 0.0)) problems << "cfl_constant must be positive; ";
  if (!(abort_h1_factor > 1.0)) problems << "abort_h1_factor must exceed 1; ";
  if (snapshot_every < 1) problems << "snapshot_every must be at least 1; ";
  for (int k : hk_orders) {
    if (k < 0) problems << "hk orders must be nonnegative; ";
  }
  const std::string msg = problems.str();
  if (!msg.empty()) throw Error(ErrorKind::ConstraintViolation, msg);
}

VectorField nonlinear_term(const VectorField& u, bool dealias_enabled, bool skew_symmetric) {
  if (!u.is_vector()) throw Error(ErrorKind::DimensionMismatch, "nonlinear term needs a vector field");
  const Grid& g = u.grid();
  const int dim = g.dim();
  const Field src = to_spectral(u);
  const Grid work = dealias_enabled ? g.padded() : g;

  auto to_work = [&](std::span<const Complex> coeffs) {
    if (dealias_enabled) return pad_to_physical(g, work, coeffs);
    std::vector<double> out(g.physical_size());
    g.transform().inverse(coeffs, out);
    return out;
  };

  std::vector<std::vector<double>> vel(static_cast<std::size_t>(dim));
  for (int d = 0; d < dim; ++d) vel[d] = to_work(src.spectral(static_cast<std::size_t>(d)));

  std::vector<Complex> deriv(g.spectral_size());
  std::vector<std::vector<double>> out(static_cast<std::size_t>(dim), std::vector<double>(work.physical_size(), 0.0));
  std::vector<double> div(skew_symmetric ? work.physical_size() : 0, 0.0);
  for (int i = 0; i < dim; ++i) {
    const auto ui = src.spectral(static_cast<std::size_t>(i));
    for (int j = 0; j < dim; ++j) {
      for (std::size_t s = 0; s < g.spectral_size(); ++s) {
        deriv[s] = Complex{0.0, g.symbol_wavevector(s)[j]} * ui[s];
      }
      const std::vector<double> dj_ui = to_work(deriv);
      for (std::size_t p = 0; p < dj_ui.size(); ++p) out[i][p] += vel[j][p] * dj_ui[p];
      if (skew_symmetric && i == j) {
        for (std::size_t p = 0; p < dj_ui.size(); ++p) div[p] += dj_ui[p];
      }
    }
  }
  if (skew_symmetric) {
    // 1/2[(u.grad)u + div(u u)] = (u.grad)u + 1/2 u div u
    for (int i = 0; i < dim; ++i) {
      for (std::size_t p = 0; p < div.size(); ++p) out[i][p] += 0.5 * vel[i][p] * div[p];
    }
  }

  std::vector<std::vector<Complex>> coeffs(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (dealias_enabled) {
      coeffs[i] = truncate_from_physical(g, work, out[i]);
    } else {
      coeffs[i].resize(g.spectral_size());
      g.transform().forward(out[i], coeffs[i]);
    }
  }
  return Field::from_spectral(g, std::move(coeffs));
}

namespace {

StepResult step_with_operator(const VectorField& u, double dt, const FlowModel& model, const StepperConfig& config,
                              const StepOperator& op) {
  const Grid& g = u.grid();
  const Field src = to_spectral(u);
  const Spectrum un = spectrum_of(src);
  const Spectrum nn = evaluate_nonlinearity(g, un, model, config);

  // base = G u - dt phi1 Phi(u)
  Spectrum base(un.size(), std::vector<Complex>(g.spectral_size()));
  accumulate_split(g, op.decay, un, 1.0, base);
  accumulate_split(g, op.first, nn, -1.0, base);

  StepDiagnostics diag;
  diag.dt = dt;
  Spectrum current = base;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int j = 1; j <= config.picard_max; ++j) {
    Spectrum nj = evaluate_nonlinearity(g, current, model, config);
    for (std::size_t c = 0; c < nj.size(); ++c) {
      for (std::size_t s = 0; s < nj[c].size(); ++s) nj[c][s] -= nn[c][s];
    }
    Spectrum next = base;
    accumulate_split(g, op.second, nj, -1.0, next);

    const double residual = difference_norm(g, next, current);
    const double scale = std::sqrt(spectrum_norm_sq(g, next));
    const double floor = 64.0 * eps * scale;
    diag.residuals.push_back(residual);
    diag.iterations = j;
    current = std::move(next);

    if (j >= 2) {
      const double prev = diag.residuals[static_cast<std::size_t>(j - 2)];
      if (prev > floor && residual > floor) {
        const double ratio = residual / prev;
        diag.max_ratio = std::max(diag.max_ratio, ratio);
        if (ratio >= 1.0) {
          std::ostringstream msg;
          msg << "Picard iteration stopped contracting (ratio " << ratio << " at iteration " << j << ", dt " << dt
              << ")";
          throw Error(ErrorKind::PicardDiverged, msg.str());
        }
      }
    }
    if (residual == 0.0 || residual <= config.picard_tol * scale || residual <= floor) {
      diag.converged = true;
      break;
    }
  }
  if (!diag.converged) {
    std::ostringstream msg;
    msg << "Picard iteration did not reach tolerance in " << config.picard_max << " iterations (dt " << dt << ")";
    throw Error(ErrorKind::PicardDiverged, msg.str());
  }
  Field out = Field::from_spectral(g, std::move(current));
  out.ensure_physical();
  return StepResult{std::move(out), std::move(diag)};
}

}  // namespace

StepResult duhamel_step(const VectorField& u, double dt, const FlowModel& model, const StepperConfig& config) {
  if (!u.is_vector()) throw Error(ErrorKind::DimensionMismatch, "duhamel_step needs a vector field");
  if (!(dt >= config.dt_min)) {
    std::ostringstream msg;
    msg << "time step " << dt << " is below dt_min " << config.dt_min;
    throw Error(ErrorKind::StepTooSmall, msg.str());
  }
  const StepOperator op(u.grid(), dt, model.params);
  return step_with_operator(u, dt, model, config, op);
}

StepResult duhamel_step(const VectorField& u, double dt, const LameParams& params, const StepperConfig& config) {
  return duhamel_step(u, dt, FlowModel::lame(params), config);
}

Trajectory integrate(const VectorField& phi, double t_end, const FlowModel& model, const StepperConfig& config) {
  config.validate();
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
  if (!phi.is_vector()) throw Error(ErrorKind::DimensionMismatch, "integrate needs a vector field");

  const Grid& g = phi.grid();
  Trajectory traj;
  traj.params = model.params;
  traj.series.hk_orders = config.hk_orders;

  Field u = phi;
  u.ensure_spectral();
  u.ensure_physical();
  traj.series.rows.push_back(measure(u, 0.0, config.hk_orders));
  traj.snapshots.push_back(Snapshot{0.0, u});
  const double h1_initial = traj.series.rows.front().h1_sq;

  double t = 0.0;
  double dt_cap = config.dt_init;
  int successes_since_cut = 0;
  long step = 0;
  std::unique_ptr<StepOperator> op;
  double op_dt = -1.0;

  while (t_end - t > 1e-12 * t_end) {
    const double u_max = traj.series.rows.back().u_max;
    double dt = dt_cap;
    if (u_max > 0.0) dt = std::min(dt, config.cfl_constant / (static_cast<double>(g.n()) * u_max));
    const double remaining = t_end - t;
    bool last = false;
    if (remaining <= dt * (1.0 + 1e-9)) {
      dt = remaining;
      last = true;
    }
    if (dt < config.dt_min) {
      traj.status = TerminationStatus::StepTooSmall;
      std::ostringstream msg;
      msg << "time step " << dt << " fell below dt_min " << config.dt_min << " at t=" << t;
      traj.message = msg.str();
      break;
    }

    if (!op || op_dt != dt) {
      op = std::make_unique<StepOperator>(g, dt, model.params);
      op_dt = dt;
    }
    StepResult result;
    try {
      result = step_with_operator(u, dt, model, config, *op);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PicardDiverged) throw;
      dt_cap = dt / 2.0;
      successes_since_cut = 0;
      continue;
    }
    result.diagnostics.t_start = t;
    t = last ? t_end : t + dt;
    ++step;
    u = std::move(result.u);

    DiagnosticRecord row = measure(u, t, config.hk_orders);
    row.picard_iters = result.diagnostics.iterations;
    row.dt = dt;
    traj.series.rows.push_back(row);
    traj.steps.push_back(std::move(result.diagnostics));

    if (dt_cap < config.dt_init && ++successes_since_cut >= 5) {
      dt_cap = std::min(config.dt_init, 2.0 * dt_cap);
      successes_since_cut = 0;
    }

    const bool blown = !std::isfinite(row.h1_sq) ||
                       (h1_initial > 0.0 && row.h1_sq > config.abort_h1_factor * h1_initial);
    const bool finished = !(t_end - t > 1e-12 * t_end);
    if (blown || finished || step % config.snapshot_every == 0) traj.snapshots.push_back(Snapshot{t, u});
    if (blown) {
      traj.status = TerminationStatus::BlowUp;
      std::ostringstream msg;
      msg << "||u||_H1^2 = " << row.h1_sq << " exceeded " << config.abort_h1_factor << " x initial at t=" << t;
      traj.message = msg.str();
      break;
    }
  }
  return traj;
}

Trajectory integrate(const VectorField& phi, double t_end, const LameParams& params, const StepperConfig& config) {
  return integrate(phi, t_end, FlowModel::lame(params), config);
}

std::string_view to_string(TerminationStatus status) noexcept {
  switch (status) {
    case TerminationStatus::Completed: return "completed";
    case TerminationStatus::BlowUp: return "blow_up";
    case TerminationStatus::StepTooSmall: return "step_too_small";
  }
  return "unknown";
}

}  // namespace lamens
