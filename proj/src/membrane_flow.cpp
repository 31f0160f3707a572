#include "vortex/membrane_flow.hpp"

#include "vortex/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vortex {

namespace {

SkewVelocityResult skew_velocity_impl(const TriangleMesh& mesh, bool parallel) {
  if (mesh.dim() != 4)
    throw ValidationError("membrane_flow.skew_mc_velocity: requires ambient dimension 4");
  const std::vector<Vec> mc = parallel ? mean_curvature_all(mesh) : mean_curvature_all_serial(mesh);
  const std::vector<NormalFrame> frames =
      parallel ? vertex_frames_all(mesh) : vertex_frames_all_serial(mesh);
  const auto boundary = mesh.boundary_vertices();
  const int nv = mesh.vertex_count();

  SkewVelocityResult out;
  out.velocity.assign(nv, Vec());
  std::vector<double> resid(nv, 0.0);

  auto one = [&](int v) {
    if (boundary[v]) {
      out.velocity[v] = zero_vec(4);
      return;
    }
    const NormalFrame& fr = frames[v];
    const double a = fr.e1.dot(mc[v]);
    const double b = fr.e2.dot(mc[v]);
    const Vec projected = a * fr.e1 + b * fr.e2;
    resid[v] = (mc[v] - projected).norm();
    out.velocity[v] = -rotate_J_unchecked(fr, projected);
  };

  if (parallel) {
    parallel_indexed(nv, one);
  } else {
    for (int v = 0; v < nv; ++v) one(v);
  }
  out.max_projection_residual = *std::max_element(resid.begin(), resid.end());
  return out;
}

} // namespace

SkewVelocityResult skew_mc_velocity(const TriangleMesh& mesh) {
  return skew_velocity_impl(mesh, true);
}

SkewVelocityResult skew_mc_velocity_serial(const TriangleMesh& mesh) {
  return skew_velocity_impl(mesh, false);
}

std::vector<Vec> skew_mc_velocity(const DiscreteCurve& curve) {
  if (curve.dim() != 3)
    throw ValidationError("membrane_flow.skew_mc_velocity: curve path requires ambient dimension 3");
  std::vector<Vec> out(curve.size());
  for (int i = 0; i < curve.size(); ++i) {
    const Vec kn = curvature_vector(curve, i);
    if (kn.squaredNorm() == 0.0) {
      out[i] = zero_vec(3);
      continue;
    }
    const NormalFrame fr = curve_normal_frame(curve, i);
    const double a = fr.e1.dot(kn);
    const double b = fr.e2.dot(kn);
    out[i] = -rotate_J_unchecked(fr, a * fr.e1 + b * fr.e2);
  }
  return out;
}

MembraneTrajectory evolve_membrane(const TriangleMesh& mesh, double dt, int steps,
                                   const MembraneEvolveOptions& opts) {
  if (dt < 0.0) throw ValidationError("membrane_flow.evolve_membrane: dt must be >= 0");
  MembraneTrajectory traj;
  TriangleMesh state = mesh;
  traj.records.push_back({0, 0.0, state.total_area(), state.centroid()});
  const int nv = state.vertex_count();

  for (int s = 1; s <= steps; ++s) {
    const std::vector<Vec> k1 = skew_mc_velocity(state).velocity;
    TriangleMesh tmp = state;
    for (int v = 0; v < nv; ++v) tmp.vertices[v] = state.vertices[v] + 0.5 * dt * k1[v];
    const std::vector<Vec> k2 = skew_mc_velocity(tmp).velocity;
    for (int v = 0; v < nv; ++v) tmp.vertices[v] = state.vertices[v] + 0.5 * dt * k2[v];
    const std::vector<Vec> k3 = skew_mc_velocity(tmp).velocity;
    for (int v = 0; v < nv; ++v) tmp.vertices[v] = state.vertices[v] + dt * k3[v];
    const std::vector<Vec> k4 = skew_mc_velocity(tmp).velocity;
    for (int v = 0; v < nv; ++v)
      state.vertices[v] += dt / 6.0 * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v]);

    for (int t = 0; t < state.triangle_count(); ++t)
      if (triangle_aspect_ratio(state, t) > opts.max_aspect_ratio)
        throw NumericalError("membrane_flow.evolve_membrane: mesh degeneration at step " +
                             std::to_string(s) + ", triangle " + std::to_string(t));

    traj.records.push_back({s, s * dt, state.total_area(), state.centroid()});
  }
  traj.final = state;
  return traj;
}

} // namespace vortex
