#include "vortex/pointvortex.hpp"

#include "vortex/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vortex {

namespace {

constexpr double kCollisionDistance = 1e-12;
constexpr double kNearCollisionDistance = 1e-6;

Vec induced_velocity(const VortexConfig2D& cfg, int j) {
  const int n = cfg.count();
  const Vec& zj = cfg.positions[j];
  double vx = 0.0, vy = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == j) continue;
    const double dx = zj[0] - cfg.positions[k][0];
    const double dy = zj[1] - cfg.positions[k][1];
    const double r2 = dx * dx + dy * dy;
    if (r2 <= kCollisionDistance * kCollisionDistance)
      throw NumericalError("pointvortex2d.kirchhoff_velocity: vortex collision between " +
                           std::to_string(j) + " and " + std::to_string(k));
    vx -= cfg.strengths[k] * dy / r2;
    vy += cfg.strengths[k] * dx / r2;
  }
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  return make_vec2(scale * vx, scale * vy);
}

} // namespace

void VortexConfig2D::validate() const {
  if (positions.empty())
    throw ValidationError("pointvortex2d: empty configuration");
  if (positions.size() != strengths.size())
    throw ValidationError("pointvortex2d: positions/strengths length mismatch");
  for (double k : strengths)
    if (k == 0.0) throw ValidationError("pointvortex2d: zero vortex strength");
  for (const Vec& p : positions)
    if (p.size() != 2) throw ValidationError("pointvortex2d: positions must be 2D");
  if (count() > 1 && min_separation() <= kCollisionDistance)
    throw ValidationError("pointvortex2d: coincident vortices");
}

double VortexConfig2D::min_separation() const {
  double best = 1e300;
  for (int j = 0; j < count(); ++j)
    for (int k = j + 1; k < count(); ++k)
      best = std::min(best, (positions[j] - positions[k]).norm());
  return best;
}

std::vector<Vec> kirchhoff_velocity_serial(const VortexConfig2D& cfg) {
  std::vector<Vec> v(cfg.count());
  for (int j = 0; j < cfg.count(); ++j) v[j] = induced_velocity(cfg, j);
  return v;
}

std::vector<Vec> kirchhoff_velocity(const VortexConfig2D& cfg) {
  const int n = cfg.count();
  std::vector<Vec> v(n);
  parallel_indexed(n, [&](int j) { v[j] = induced_velocity(cfg, j); });
  return v;
}

double kirchhoff_hamiltonian(const VortexConfig2D& cfg) {
  double h = 0.0;
  for (int j = 0; j < cfg.count(); ++j)
    for (int k = j + 1; k < cfg.count(); ++k) {
      const double r2 = (cfg.positions[j] - cfg.positions[k]).squaredNorm();
      if (r2 <= kCollisionDistance * kCollisionDistance)
        throw NumericalError("pointvortex2d.kirchhoff_hamiltonian: vortex collision between " +
                             std::to_string(j) + " and " + std::to_string(k));
      h -= cfg.strengths[j] * cfg.strengths[k] * std::log(r2);
    }
  return h / (4.0 * std::numbers::pi);
}

double poisson_bracket(const VortexConfig2D& cfg, const std::vector<Vec>& grad_f,
                       const std::vector<Vec>& grad_g) {
  if (int(grad_f.size()) != cfg.count() || int(grad_g.size()) != cfg.count())
    throw ValidationError("pointvortex2d.poisson_bracket: gradient length mismatch");
  double sum = 0.0;
  for (int j = 0; j < cfg.count(); ++j)
    sum += (grad_f[j][0] * grad_g[j][1] - grad_f[j][1] * grad_g[j][0]) / cfg.strengths[j];
  return sum;
}

Impulses impulses(const VortexConfig2D& cfg) {
  Impulses out;
  for (int j = 0; j < cfg.count(); ++j) {
    out.px += cfg.strengths[j] * cfg.positions[j][0];
    out.py += cfg.strengths[j] * cfg.positions[j][1];
    out.angular += cfg.strengths[j] * cfg.positions[j].squaredNorm();
  }
  return out;
}

namespace {

std::vector<Vec> velocities_at(const VortexConfig2D& cfg, const std::vector<Vec>& pos) {
  VortexConfig2D probe = cfg;
  probe.positions = pos;
  return kirchhoff_velocity(probe);
}

void check_separation(const VortexConfig2D& cfg, const std::vector<Vec>& pos) {
  for (size_t j = 0; j < pos.size(); ++j)
    for (size_t k = j + 1; k < pos.size(); ++k)
      if ((pos[j] - pos[k]).norm() < kNearCollisionDistance)
        throw NumericalError("pointvortex2d.step2d: near collision between vortices " +
                             std::to_string(j) + " and " + std::to_string(k));
  (void)cfg;
}

} // namespace

VortexConfig2D step2d(const VortexConfig2D& cfg, double dt, Scheme2D scheme) {
  if (dt < 0.0) throw ValidationError("pointvortex2d.step2d: dt must be >= 0");
  if (dt == 0.0) return cfg;
  check_separation(cfg, cfg.positions);
  const int n = cfg.count();
  VortexConfig2D out = cfg;

  if (scheme == Scheme2D::Rk4) {
    const std::vector<Vec> k1 = velocities_at(cfg, cfg.positions);
    std::vector<Vec> p(n);
    for (int j = 0; j < n; ++j) p[j] = cfg.positions[j] + 0.5 * dt * k1[j];
    const std::vector<Vec> k2 = velocities_at(cfg, p);
    for (int j = 0; j < n; ++j) p[j] = cfg.positions[j] + 0.5 * dt * k2[j];
    const std::vector<Vec> k3 = velocities_at(cfg, p);
    for (int j = 0; j < n; ++j) p[j] = cfg.positions[j] + dt * k3[j];
    const std::vector<Vec> k4 = velocities_at(cfg, p);
    for (int j = 0; j < n; ++j)
      out.positions[j] =
          cfg.positions[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  } else {
    // implicit midpoint: y = x + dt v((x+y)/2), solved by fixed-point sweeps
    std::vector<Vec> y = cfg.positions;
    std::vector<Vec> mid(n);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      for (int j = 0; j < n; ++j) mid[j] = 0.5 * (cfg.positions[j] + y[j]);
      const std::vector<Vec> vm = velocities_at(cfg, mid);
      double resid = 0.0;
      for (int j = 0; j < n; ++j) {
        const Vec next = cfg.positions[j] + dt * vm[j];
        resid = std::max(resid, (next - y[j]).norm());
        y[j] = next;
      }
      if (resid < 1e-12) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("pointvortex2d.step2d: integrator stalled (implicit midpoint)");
    out.positions = y;
  }
  check_separation(cfg, out.positions);
  return out;
}

} // namespace vortex
