#pragma once

#include "vortex/frame.hpp"
#include "vortex/types.hpp"

#include <vector>

namespace vortex {

// Oriented polyline in R^n. Flow carriers are closed; open curves are allowed
// for diagnostics fixtures (helix, patch sections).
struct DiscreteCurve {
  std::vector<Vec> points;
  bool closed = true;

  int dim() const { return points.empty() ? 0 : int(points[0].size()); }
  int size() const { return int(points.size()); }

  // Wrapping index for closed curves; throws on out-of-range interior access for open ones.
  int wrap(int i) const;

  void validate() const; // >= 4 points, consistent dims, distinct consecutive points
};

double curve_length(const DiscreteCurve& curve);

// Discrete curvature vector k*n at vertex i from the circumscribed circle of
// (p_{i-1}, p_i, p_{i+1}): magnitude 1/R_circ, pointing from the vertex toward
// the circumcenter. Zero when the three points are collinear to tolerance.
Vec curvature_vector(const DiscreteCurve& curve, int i);

// Unit tangent at vertex i (normalized central difference; one-sided at open ends).
Vec curve_tangent(const DiscreteCurve& curve, int i);

// Oriented frame of the plane orthogonal to the tangent at vertex i (3D curves).
// Convention: orientation_sign = -sign det[t, e1, e2], so that
// rotate_J(frame, w) == w x t and the binormal equation reads k b = -J(k n).
NormalFrame curve_normal_frame(const DiscreteCurve& curve, int i);

// Resample a closed curve at uniform arclength with the same vertex count
// (linear interpolation along the polyline).
DiscreteCurve resample_uniform(const DiscreteCurve& curve);

// True when two non-adjacent segments come closer than tol.
bool has_self_intersection(const DiscreteCurve& curve, double tol);

} // namespace vortex
