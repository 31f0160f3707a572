#pragma once

#include "vortex/curve.hpp"
#include "vortex/frame.hpp"
#include "vortex/mesh.hpp"

#include <vector>

namespace vortex {

// Fundamental solution of the Laplacian in R^n (n >= 3), Delta_p G = delta_q:
//   G(q, p) = -|q-p|^{2-n} / ((n-2) sigma_{n-1}),
// sigma_{n-1} the area of the unit sphere in R^n. Radially symmetric,
// increasing toward 0- in |q-p|.
double green(int n, const Vec& q, const Vec& p);

// grad_p G: points from q toward p with magnitude |q-p|^{1-n} / sigma_{n-1}.
Vec green_gradient(int n, const Vec& q, const Vec& p);

// Classical 3D Biot-Savart velocity of a closed filament with strength C at a
// point q off the curve (midpoint-rule quadrature over edges):
//   v(q) = -(C/4pi) sum_e (q - m_e) x dl_e / |q - m_e|^3.
Vec velocity_filament3d(const DiscreteCurve& curve, double strength, const Vec& q);

struct MembraneVelocityOptions {
  // Triangles closer to q than near_field_factor * diameter are split in four
  // recursively, up to max_depth, so evaluation points near the membrane stay
  // accurate without refining the mesh globally.
  double near_field_factor = 3.0;
  int max_depth = 12;
};

// Localized Biot-Savart velocity of a codimension-2 membrane in R^4 at q off
// the membrane: quadrature over triangles of C * J(Proj_N grad_p G(q, p)),
// frames per flat triangle, 3-point edge-midpoint rule. Normalized so a loop
// linking the membrane once measures circulation +strength.
Vec velocity_membrane(const TriangleMesh& mesh, const Vec& q,
                      const MembraneVelocityOptions& opts = {});
Vec velocity_membrane_serial(const TriangleMesh& mesh, const Vec& q,
                             const MembraneVelocityOptions& opts = {});

// Longest edge incident to mesh vertex v (the local resolution h used by the
// eps >= 3h truncation floor).
double local_spacing(const TriangleMesh& mesh, int v);
double max_edge_length(const TriangleMesh& mesh);
double max_edge_length(const DiscreteCurve& curve);

// Truncated self-induced velocity v_eps at mesh vertex q_index: the membrane
// quadrature restricted to triangles whose centroids lie at chordal distance
// >= eps. Each eps must be >= 3 * local spacing.
Vec velocity_truncated(const TriangleMesh& mesh, int q_index, double eps);

// v_eps for a whole list of eps values in one pass (contributions sorted by
// centroid distance once, then prefix-summed). Results are returned in input
// order and do not depend on it.
std::vector<Vec> truncated_velocity_profile(const TriangleMesh& mesh, int q_index,
                                            const std::vector<double>& eps_list);
std::vector<Vec> truncated_velocity_profile_serial(const TriangleMesh& mesh, int q_index,
                                                   const std::vector<double>& eps_list);

// The n = 3 reduction: truncated self-induced filament velocity at a curve
// vertex, edges kept when their midpoints satisfy |m - q| >= eps.
std::vector<Vec> truncated_filament_profile(const DiscreteCurve& curve, double strength,
                                            int q_index, const std::vector<double>& eps_list);

struct LiaSlopeResult {
  Vec slope;                  // componentwise regression of v_eps against ln(1/eps)
  double direction_error_deg; // angle between the slope line and the J(MC) line
  double magnitude_ratio;     // |slope| / |MC|, the empirical |C_n|
  double c_n_estimate;        // signed: projection of lim v_eps/ln(eps) onto J(MC)/|MC|
  double fit_residual;        // relative residual of the affine fit
  Vec j_mc;                   // J(MC(q)) for reference
  bool direction_applicable;  // false when MC vanishes at q
};

// Fits the truncation asymptotics at a vertex. Requires >= 5 eps values
// spanning at least a decade, all >= 3h; throws NumericalError when the fit
// residual exceeds 20% (asymptotic regime not reached).
LiaSlopeResult lia_slope(const TriangleMesh& mesh, int q_index,
                         const std::vector<double>& eps_list);

} // namespace vortex
