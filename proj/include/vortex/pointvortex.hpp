#pragma once

#include "vortex/types.hpp"

#include <vector>

namespace vortex {

// State of the planar N-vortex system: positions z_j and strengths kappa_j.
struct VortexConfig2D {
  std::vector<Vec> positions; // 2D points
  std::vector<double> strengths;

  int count() const { return int(positions.size()); }
  void validate() const; // nonzero strengths, pairwise distinct positions
  double min_separation() const;
};

enum class Scheme2D { Rk4, ImplicitMidpoint };

// Closed-form pairwise induced velocities:
//   xdot_j = -(1/2pi) sum_{k!=j} kappa_k (y_j - y_k)/|z_j - z_k|^2
//   ydot_j = +(1/2pi) sum_{k!=j} kappa_k (x_j - x_k)/|z_j - z_k|^2
std::vector<Vec> kirchhoff_velocity(const VortexConfig2D& cfg);
std::vector<Vec> kirchhoff_velocity_serial(const VortexConfig2D& cfg);

// H = -(1/4pi) sum_{j<k} kappa_j kappa_k ln |z_j - z_k|^2
double kirchhoff_hamiltonian(const VortexConfig2D& cfg);

// sum_j (1/kappa_j) (df/dx_j dg/dy_j - df/dy_j dg/dx_j)
double poisson_bracket(const VortexConfig2D& cfg, const std::vector<Vec>& grad_f,
                       const std::vector<Vec>& grad_g);

struct Impulses {
  double px = 0.0; // sum kappa_j x_j
  double py = 0.0; // sum kappa_j y_j
  double angular = 0.0; // sum kappa_j |z_j|^2
};
Impulses impulses(const VortexConfig2D& cfg);

// One time step; strengths unchanged. The implicit midpoint iterates the
// fixed point to residual < 1e-12 (at most 50 sweeps). A minimum-separation
// monitor rejects steps that bring vortices within 1e-6.
VortexConfig2D step2d(const VortexConfig2D& cfg, double dt, Scheme2D scheme = Scheme2D::Rk4);

} // namespace vortex
