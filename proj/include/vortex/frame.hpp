#pragma once

#include "vortex/types.hpp"

namespace vortex {

// Oriented orthonormal basis of a 2-plane normal to a curve or membrane.
// orientation_sign ties (e1, e2) to the ambient and carrier orientations; the
// quarter turn J below is well defined on the oriented plane regardless of
// which orthonormal basis of it was chosen.
struct NormalFrame {
  Vec e1;
  Vec e2;
  double orientation_sign = 1.0; // +1 or -1
};

// Positive quarter turn in the oriented normal plane:
// w = a e1 + b e2  ->  orientation_sign * (-b e1 + a e2).
// Throws if w has a component outside the plane beyond tolerance.
Vec rotate_J(const NormalFrame& frame, const Vec& w, double plane_tol = 1e-8);

// Quarter turn of a vector already known to lie in the plane (no membership check).
Vec rotate_J_unchecked(const NormalFrame& frame, const Vec& w);

// Orthonormal completion: given k orthonormal vectors in R^n, return n-k
// orthonormal vectors spanning the orthogonal complement. Deterministic.
std::vector<Vec> orthonormal_complement(const std::vector<Vec>& basis, int dim);

} // namespace vortex
