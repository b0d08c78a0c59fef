#include "lamens/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "lamens/error.hpp"
#include "lamens/spectral_ops.hpp"
#include "lamens/stepper.hpp"

namespace lamens {

namespace {

double norm_sq(const Wavevector& xi) { return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]; }

// Weighted spectral sum (2pi)^d sum_k w(|xi|^2) |c_k|^2.
template <class Weight>
double weighted_norm_sq(const Field& u, const Weight& weight) {
  const Field src = to_spectral(u);
  const Grid& g = src.grid();
  double sum = 0.0;
  for (std::size_t c = 0; c < src.components(); ++c) {
    const auto cs = src.spectral(c);
    for (std::size_t s = 0; s < cs.size(); ++s) {
      sum += g.hermitian_weight(s) * weight(norm_sq(g.symbol_wavevector(s))) * std::norm(cs[s]);
    }
  }
  return g.volume() * sum;
}

double hk_column(const DiagnosticSeries& series, const DiagnosticRecord& row, int k) {
  if (k == 0) return 2.0 * row.energy;
  if (k == 1) return row.h1_sq;
  const auto it = std::find(series.hk_orders.begin(), series.hk_orders.end(), k);
  if (it == series.hk_orders.end()) {
    throw Error(ErrorKind::InvalidArgument, "H^k order " + std::to_string(k) + " was not recorded");
  }
  return row.hk_sq[static_cast<std::size_t>(it - series.hk_orders.begin())];
}

}  // namespace

double sobolev_norm_sq(const Field& u, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "Sobolev order must be nonnegative");
  return weighted_norm_sq(u, [k](double k2) { return std::pow(1.0 + k2, k); });
}

double gradient_norm_sq(const Field& u) {
  return weighted_norm_sq(u, [](double k2) { return k2; });
}

DiagnosticRecord measure(const VectorField& u, double t, const std::vector<int>& hk_orders) {
  DiagnosticRecord row;
  row.t = t;
  row.energy = 0.5 * l2_norm_sq(to_spectral(u));
  row.enstrophy = 0.5 * gradient_norm_sq(u);
  row.div_l2 = l2_norm(divergence(u));
  row.u_max = max_magnitude(u);
  row.h1_sq = sobolev_norm_sq(u, 1);
  for (int k : hk_orders) row.hk_sq.push_back(sobolev_norm_sq(u, k));
  return row;
}

GronwallEnvelope gronwall_envelope(const DiagnosticSeries& series, double c1) {
  GronwallEnvelope out;
  if (series.empty()) return out;
  const double h0 = series.rows.front().h1_sq;
  double integral = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& row = series.rows[i];
    if (i > 0) {
      const auto& prev = series.rows[i - 1];
      integral += 0.5 * (row.t - prev.t) * (row.u_max * row.u_max + prev.u_max * prev.u_max);
    }
    const double env = h0 * std::exp(c1 * integral);
    out.envelope.push_back(env);
    if (row.h1_sq > env * (1.0 + 1e-12)) out.violated = true;
  }
  return out;
}

double fit_gronwall_constant(const DiagnosticSeries& series) {
  if (series.empty()) return 0.0;
  const double h0 = series.rows.front().h1_sq;
  if (h0 <= 0.0) return 0.0;
  double integral = 0.0;
  double c1 = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const auto& row = series.rows[i];
    const auto& prev = series.rows[i - 1];
    integral += 0.5 * (row.t - prev.t) * (row.u_max * row.u_max + prev.u_max * prev.u_max);
    if (row.h1_sq > h0 && integral > 0.0) c1 = std::max(c1, std::log(row.h1_sq / h0) / integral);
  }
  return c1;
}

double energy_identity_residual(const Trajectory& traj, double mu) {
  const auto& rows = traj.series.rows;
  if (rows.empty()) return 0.0;
  const double e0 = 2.0 * rows.front().energy;
  double dissipated = 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    // ||grad u||^2 = 2 * enstrophy
    dissipated += 2.0 * mu * (rows[i].t - rows[i - 1].t) * (rows[i].enstrophy + rows[i - 1].enstrophy);
    worst = std::max(worst, std::abs(2.0 * rows[i].energy + dissipated - e0));
  }
  return e0 > 0.0 ? worst / e0 : worst;
}

double hk_inequality_check(const Trajectory& traj, int k) {
  const auto& series = traj.series;
  if (series.size() < 3) throw Error(ErrorKind::InsufficientEntries, "hk_inequality_check needs at least 3 rows");
  double c = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const auto& a = series.rows[i - 1];
    const auto& b = series.rows[i];
    const double dt = b.t - a.t;
    if (dt <= 0.0) continue;
    const double ha = hk_column(series, a, k);
    const double hb = hk_column(series, b, k);
    const double rate = (hb - ha) / dt;
    const double scale = 0.5 * (a.u_max * a.u_max * ha + b.u_max * b.u_max * hb);
    if (rate > 0.0 && scale > 0.0) c = std::max(c, rate / scale);
  }
  return c;
}

double sup_norm_constant(const Trajectory& traj) {
  const auto& rows = traj.series.rows;
  if (rows.empty() || rows.front().u_max == 0.0) return 0.0;
  double best = 0.0;
  for (const auto& row : rows) best = std::max(best, row.u_max);
  return best / rows.front().u_max;
}

double lame_energy_balance_residual(const Trajectory& traj) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 2) return 0.0;
  const LameParams& params = traj.params;
  auto dissipation = [&](const Field& u) {
    const Field n = nonlinear_term(u);
    const Field us = to_spectral(u);
    double inertia = 0.0;
    const Grid& g = us.grid();
    for (std::size_t c = 0; c < us.components(); ++c) {
      const auto a = us.spectral(c);
      const auto b = n.spectral(c);
      for (std::size_t s = 0; s < a.size(); ++s) inertia += g.hermitian_weight(s) * std::real(std::conj(a[s]) * b[s]);
    }
    inertia *= g.volume();
    const double div_sq = l2_norm_sq(divergence(u));
    return params.mu * gradient_norm_sq(u) + params.penalty() * div_sq + inertia;
  };
  double worst = 0.0;
  double scale = 0.0;
  double d_prev = dissipation(snaps.front().field);
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double d_next = dissipation(snaps[i].field);
    const double dt = snaps[i].t - snaps[i - 1].t;
    const double de = 0.5 * (l2_norm_sq(snaps[i].field) - l2_norm_sq(snaps[i - 1].field)) / dt;
    worst = std::max(worst, std::abs(de + 0.5 * (d_prev + d_next)));
    scale = std::max(scale, std::abs(d_next));
    d_prev = d_next;
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace lamens
