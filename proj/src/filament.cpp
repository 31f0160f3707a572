#include "vortex/filament.hpp"

#include "vortex/parallel.hpp"

#include <cmath>
#include <string>

namespace vortex {

namespace {

constexpr double kFlatCurvature = 1e-8;

Vec vertex_velocity(const DiscreteCurve& curve, int i) {
  const Vec kn = curvature_vector(curve, i);
  if (kn.squaredNorm() == 0.0) return zero_vec(3);
  return cross3(curve_tangent(curve, i), kn);
}

} // namespace

std::vector<Vec> binormal_velocity_serial(const DiscreteCurve& curve) {
  if (curve.dim() != 3)
    throw ValidationError("filament3d.binormal_velocity: requires ambient dimension 3");
  std::vector<Vec> v(curve.size());
  for (int i = 0; i < curve.size(); ++i) v[i] = vertex_velocity(curve, i);
  return v;
}

std::vector<Vec> binormal_velocity(const DiscreteCurve& curve) {
  if (curve.dim() != 3)
    throw ValidationError("filament3d.binormal_velocity: requires ambient dimension 3");
  const int m = curve.size();
  std::vector<Vec> v(m);
  parallel_indexed(m, [&](int i) { v[i] = vertex_velocity(curve, i); });
  return v;
}

FilamentTrajectory evolve_filament(const DiscreteCurve& curve, double dt, int steps,
                                   const FilamentEvolveOptions& opts) {
  if (dt < 0.0) throw ValidationError("filament3d.evolve_filament: dt must be >= 0");
  FilamentTrajectory traj;
  DiscreteCurve state = curve;
  traj.records.push_back({0, 0.0, curve_length(state), false});

  const int m = state.size();
  for (int s = 1; s <= steps; ++s) {
    const std::vector<Vec> k1 = binormal_velocity(state);
    DiscreteCurve tmp = state;
    for (int i = 0; i < m; ++i) tmp.points[i] = state.points[i] + 0.5 * dt * k1[i];
    const std::vector<Vec> k2 = binormal_velocity(tmp);
    for (int i = 0; i < m; ++i) tmp.points[i] = state.points[i] + 0.5 * dt * k2[i];
    const std::vector<Vec> k3 = binormal_velocity(tmp);
    for (int i = 0; i < m; ++i) tmp.points[i] = state.points[i] + dt * k3[i];
    const std::vector<Vec> k4 = binormal_velocity(tmp);
    for (int i = 0; i < m; ++i)
      state.points[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    FilamentStepRecord rec{s, s * dt, curve_length(state), false};
    if (opts.resample_every > 0 && s % opts.resample_every == 0) {
      state = resample_uniform(state);
      rec.resampled = true;
      rec.length = curve_length(state);
    }
    if (opts.detect_self_intersection &&
        has_self_intersection(state, opts.self_intersection_tol))
      throw NumericalError("filament3d.evolve_filament: topology change suspected at step " +
                           std::to_string(s));
    traj.records.push_back(rec);
  }
  traj.final = state;
  return traj;
}

double edge_torsion(const DiscreteCurve& curve, int i) {
  const Vec kn0 = curvature_vector(curve, i);
  const Vec kn1 = curvature_vector(curve, curve.wrap(i + 1));
  const double k0 = kn0.norm(), k1 = kn1.norm();
  if (k0 < kFlatCurvature || k1 < kFlatCurvature)
    throw NumericalError("filament3d.hasimoto: torsion undefined at flat point near vertex " +
                         std::to_string(i));
  const Vec b0 = cross3(curve_tangent(curve, i), kn0 / k0);
  const Vec b1 = cross3(curve_tangent(curve, curve.wrap(i + 1)), kn1 / k1);
  Vec edge = curve.points[curve.wrap(i + 1)] - curve.points[i];
  const double ds = edge.norm();
  edge /= ds;
  const double angle = std::atan2(cross3(b0, b1).dot(edge), b0.dot(b1));
  return angle / ds;
}

std::vector<std::complex<double>> hasimoto(const DiscreteCurve& curve) {
  if (curve.dim() != 3) throw ValidationError("filament3d.hasimoto: requires ambient dimension 3");
  const int m = curve.size();
  const int first = curve.closed ? 0 : 1;
  const int last = curve.closed ? m - 1 : m - 2; // torsion needs interior neighbors
  std::vector<std::complex<double>> psi(m, {0.0, 0.0});
  double phase = 0.0;
  for (int i = first; i <= last; ++i) {
    const double k = curvature_vector(curve, i).norm();
    if (k < kFlatCurvature)
      throw NumericalError("filament3d.hasimoto: torsion undefined at flat point at vertex " +
                           std::to_string(i));
    psi[i] = std::polar(k, phase);
    if (i < last) {
      const double ds = (curve.points[curve.wrap(i + 1)] - curve.points[i]).norm();
      phase += edge_torsion(curve, i) * ds; // edgewise torsion integrates exactly
    }
  }
  return psi;
}

} // namespace vortex
