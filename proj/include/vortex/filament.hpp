#pragma once

#include "vortex/curve.hpp"

#include <complex>
#include <vector>

namespace vortex {

// Per-vertex binormal-flow velocity k*b = t x (k*n) for a curve in R^3.
// Zero where the curvature vanishes.
std::vector<Vec> binormal_velocity(const DiscreteCurve& curve);
std::vector<Vec> binormal_velocity_serial(const DiscreteCurve& curve);

struct FilamentEvolveOptions {
  int resample_every = 0;          // 0 = never
  bool detect_self_intersection = false;
  double self_intersection_tol = 1e-3;
};

struct FilamentStepRecord {
  int step = 0;
  double t = 0.0;
  double length = 0.0;
  bool resampled = false;
};

struct FilamentTrajectory {
  DiscreteCurve final;
  std::vector<FilamentStepRecord> records; // step 0 .. steps
};

// RK4 stepping of the binormal velocity; records the length (the Hamiltonian)
// each step. Optional uniform-arclength resampling and self-intersection halt.
FilamentTrajectory evolve_filament(const DiscreteCurve& curve, double dt, int steps,
                                   const FilamentEvolveOptions& opts = {});

// Discrete torsion on edge (i, i+1): dihedral angle between consecutive
// osculating planes divided by the edge length. Requires nonvanishing
// curvature at both ends of the edge.
double edge_torsion(const DiscreteCurve& curve, int i);

// Hasimoto wave function psi_i = k_i exp(i * integral of torsion ds), phase
// gauge fixed to 0 at vertex 0 (interior start for open curves).
std::vector<std::complex<double>> hasimoto(const DiscreteCurve& curve);

} // namespace vortex
