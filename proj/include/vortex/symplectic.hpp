#pragma once

#include "vortex/curve.hpp"
#include "vortex/filament.hpp"
#include "vortex/mesh.hpp"
#include "vortex/pointvortex.hpp"

#include <map>
#include <optional>
#include <vector>

namespace vortex {

// Kirillov-Kostant form on point-vortex variations: sum_j kappa_j det(V_j, W_j).
double kk_form_points(const VortexConfig2D& cfg, const std::vector<Vec>& v,
                      const std::vector<Vec>& w);

// Marsden-Weinstein form on a closed curve in R^3, edgewise midpoint rule of
// det[V, W, edge].
double mw_form_curve(const DiscreteCurve& curve, const std::vector<Vec>& v,
                     const std::vector<Vec>& w);

// Marsden-Weinstein form on a codimension-2 membrane in R^4: per-triangle
// det[V, W, t1, t2]/2 with vertex fields averaged over the triangle. Fields
// are projected onto the vertex normal planes first; the largest projection
// residual is written to *projection_residual when given.
double mw_form_membrane(const TriangleMesh& mesh, const std::vector<Vec>& v,
                        const std::vector<Vec>& w, double* projection_residual = nullptr);

// Closed discrete 1-form on the edges of a triangulated surface in R^3,
// optionally exact (alpha = d f for vertex values f).
struct VortexSheet {
  TriangleMesh mesh;
  std::map<std::pair<int, int>, double> alpha; // keyed by (min,max) vertex pair, value for min->max
  std::optional<std::vector<double>> potential;

  double alpha_on(int from, int to) const; // oriented edge value, throws on non-edges
  // alpha closed (summing to 0 around every triangle, tol 1e-12); potential
  // consistent with alpha when present.
  void validate() const;

  static VortexSheet from_potential(TriangleMesh mesh, std::vector<double> f);
  static VortexSheet from_cochain(TriangleMesh mesh, std::map<std::pair<int, int>, double> alpha);
};

// Pairing of the sheet with a divergence-free field sampled at triangle
// centroids: Flux(f V) through Gamma. Requires an exact alpha (a potential).
double sheet_pairing(const VortexSheet& sheet, const std::vector<Vec>& v_at_centroids);

// Symplectic form on sheet variations: per-triangle value of
// alpha wedge i_V i_W mu with mu = dx^dy^dz. V, W sampled at vertices.
double sheet_form(const VortexSheet& sheet, const std::vector<Vec>& v, const std::vector<Vec>& w);

// Family of closed curves (levels of the sheet potential) with uniform fiber
// spacing df; the family Hamiltonian is sum_f length(Gamma_f) * df.
struct SheetFibration {
  std::vector<DiscreteCurve> fibers;
  double df = 1.0;

  void validate() const;
  double family_hamiltonian() const;
};

// One binormal RK4 step applied to every fiber independently.
SheetFibration sheet_family_binormal_step(const SheetFibration& fib, double dt);

} // namespace vortex
