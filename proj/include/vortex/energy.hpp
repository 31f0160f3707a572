#pragma once

#include "vortex/curve.hpp"
#include "vortex/mesh.hpp"

#include <vector>

namespace vortex {

// Regularized kinetic energy of the membrane's velocity field, reduced to the
// pair integral over the carrier:
//   E_eps = (C^2/2) sum over ordered centroid pairs with |q-p| >= eps of
//           (-G(q,p)) dA(q) dA(p),
// the sign chosen so the energy is positive and grows as eps shrinks. The
// curve overloads are the n = 3 filament reduction (edge midpoints, lengths).
double regularized_energy(const TriangleMesh& mesh, double eps);
double regularized_energy(const DiscreteCurve& curve, double strength, double eps);

// E_eps for several eps values in one pass over all pairs. Values are
// independent of the eps ordering (bit-identical under permutation), and the
// parallel version matches the serial one bitwise.
std::vector<double> energy_profile(const TriangleMesh& mesh, const std::vector<double>& eps_list);
std::vector<double> energy_profile_serial(const TriangleMesh& mesh,
                                          const std::vector<double>& eps_list);
std::vector<double> energy_profile(const DiscreteCurve& curve, double strength,
                                   const std::vector<double>& eps_list);

struct EnergySlopeResult {
  double slope = 0.0;            // of E_eps against ln(1/eps)
  double slope_per_volume = 0.0; // slope / volume(P) (length for curves)
  double fit_residual = 0.0;
};

// Affine fit of E_eps against ln(1/eps). Requires >= 5 values spanning a
// decade, all >= 3h; throws NumericalError when the residual exceeds 20%.
EnergySlopeResult energy_slope(const TriangleMesh& mesh, const std::vector<double>& eps_list);
EnergySlopeResult energy_slope(const DiscreteCurve& curve, double strength,
                               const std::vector<double>& eps_list);

} // namespace vortex
