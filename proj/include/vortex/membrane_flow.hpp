#pragma once

#include "vortex/curve.hpp"
#include "vortex/mesh.hpp"
#include "vortex/mesh_geometry.hpp"

#include <vector>

namespace vortex {

// Per-vertex skew-mean-curvature velocity -J(MC(v)) for a codimension-2
// membrane: mean curvature projected onto the vertex normal plane, turned a
// quarter in the oriented plane, negated. Boundary vertices of open test
// fixtures get zero. max_projection_residual records how far MC was from its
// normal-plane projection (a mesh-quality diagnostic).
struct SkewVelocityResult {
  std::vector<Vec> velocity;
  double max_projection_residual = 0.0;
};

SkewVelocityResult skew_mc_velocity(const TriangleMesh& mesh);
SkewVelocityResult skew_mc_velocity_serial(const TriangleMesh& mesh);

// The n = 3 reduction: a curve treated as a codimension-2 carrier. Equals the
// binormal velocity k*b.
std::vector<Vec> skew_mc_velocity(const DiscreteCurve& curve);

struct MembraneStepRecord {
  int step = 0;
  double t = 0.0;
  double volume = 0.0; // total area, the Hamiltonian
  Vec centroid;
};

struct MembraneTrajectory {
  TriangleMesh final;
  std::vector<MembraneStepRecord> records;
};

struct MembraneEvolveOptions {
  double max_aspect_ratio = 100.0;
};

MembraneTrajectory evolve_membrane(const TriangleMesh& mesh, double dt, int steps,
                                   const MembraneEvolveOptions& opts = {});

} // namespace vortex
