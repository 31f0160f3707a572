#include "vortex/frame.hpp"

#include <cmath>

namespace vortex {

Vec rotate_J_unchecked(const NormalFrame& frame, const Vec& w) {
  const double a = frame.e1.dot(w);
  const double b = frame.e2.dot(w);
  return frame.orientation_sign * (-b * frame.e1 + a * frame.e2);
}

Vec rotate_J(const NormalFrame& frame, const Vec& w, double plane_tol) {
  const double a = frame.e1.dot(w);
  const double b = frame.e2.dot(w);
  const Vec in_plane = a * frame.e1 + b * frame.e2;
  const double resid = (w - in_plane).norm();
  if (resid > plane_tol * std::max(1.0, w.norm()))
    throw ValidationError("geometry.rotate_J: vector not normal (out-of-plane residual " +
                          std::to_string(resid) + ")");
  return frame.orientation_sign * (-b * frame.e1 + a * frame.e2);
}

std::vector<Vec> orthonormal_complement(const std::vector<Vec>& basis, int dim) {
  std::vector<Vec> result;
  std::vector<Vec> accum = basis;
  while (int(accum.size()) < dim) {
    // Pick the standard axis with the largest residual; ties resolve to the
    // lowest axis index, keeping the construction deterministic.
    Vec best;
    double best_norm = -1.0;
    for (int axis = 0; axis < dim; ++axis) {
      Vec cand = zero_vec(dim);
      cand[axis] = 1.0;
      for (const Vec& b : accum) cand -= b.dot(cand) * b;
      const double nrm = cand.norm();
      if (nrm > best_norm + 1e-12) {
        best_norm = nrm;
        best = cand;
      }
    }
    if (best_norm < 1e-8)
      throw NumericalError("geometry.orthonormal_complement: could not complete basis");
    best /= best_norm;
    for (const Vec& b : accum) best -= b.dot(best) * b; // second pass
    best.normalize();
    accum.push_back(best);
    result.push_back(best);
  }
  return result;
}

} // namespace vortex
