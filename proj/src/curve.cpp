#include "vortex/curve.hpp"

#include <cmath>
#include <string>

namespace vortex {

namespace {
constexpr double kDegenerateEdge = 1e-12;
constexpr double kCollinearSin = 1e-9;
} // namespace

int DiscreteCurve::wrap(int i) const {
  const int m = size();
  if (closed) return ((i % m) + m) % m;
  if (i < 0 || i >= m)
    throw ValidationError("geometry.curve: vertex index " + std::to_string(i) +
                          " outside open curve of " + std::to_string(m) + " points");
  return i;
}

void DiscreteCurve::validate() const {
  if (points.size() < 4)
    throw ValidationError("geometry.curve: need at least 4 points, got " +
                          std::to_string(points.size()));
  const int n = dim();
  if (n < 2) throw ValidationError("geometry.curve: ambient dimension must be >= 2");
  for (const Vec& p : points)
    if (int(p.size()) != n) throw ValidationError("geometry.curve: inconsistent point dimensions");
  const int edges = closed ? size() : size() - 1;
  for (int i = 0; i < edges; ++i)
    if ((points[wrap(i + 1)] - points[i]).norm() <= kDegenerateEdge)
      throw ValidationError("geometry.curve: degenerate edge at vertex " + std::to_string(i));
}

double curve_length(const DiscreteCurve& curve) {
  const int edges = curve.closed ? curve.size() : curve.size() - 1;
  double len = 0.0;
  for (int i = 0; i < edges; ++i) len += (curve.points[curve.wrap(i + 1)] - curve.points[i]).norm();
  return len;
}

Vec curvature_vector(const DiscreteCurve& curve, int i) {
  const Vec& a = curve.points[curve.wrap(i - 1)];
  const Vec& b = curve.points[curve.wrap(i)];
  const Vec& c = curve.points[curve.wrap(i + 1)];
  const Vec u = a - b;
  const Vec w = c - b;
  const double uu = u.squaredNorm(), ww = w.squaredNorm(), uw = u.dot(w);
  if (uu <= kDegenerateEdge * kDegenerateEdge || ww <= kDegenerateEdge * kDegenerateEdge)
    throw ValidationError("geometry.curve_curvature_vector: degenerate edge at vertex " +
                          std::to_string(i));
  // 4 Area^2 = |u|^2|w|^2 - (u.w)^2; collinear when sin(angle) is tiny.
  const double gram = uu * ww - uw * uw;
  if (gram <= kCollinearSin * kCollinearSin * uu * ww) return zero_vec(curve.dim());
  // Circumcenter O = b + alpha u + beta w for the triangle (b; u, w).
  const double d = 2.0 * gram;
  const double alpha = ww * (uu - uw) / d;
  const double beta = uu * (ww - uw) / d;
  const Vec to_center = alpha * u + beta * w;
  return to_center / to_center.squaredNorm();
}

Vec curve_tangent(const DiscreteCurve& curve, int i) {
  Vec diff;
  if (!curve.closed && i == 0)
    diff = curve.points[1] - curve.points[0];
  else if (!curve.closed && i == curve.size() - 1)
    diff = curve.points[i] - curve.points[i - 1];
  else
    diff = curve.points[curve.wrap(i + 1)] - curve.points[curve.wrap(i - 1)];
  const double nrm = diff.norm();
  if (nrm <= kDegenerateEdge)
    throw ValidationError("geometry.curve_tangent: degenerate edge at vertex " + std::to_string(i));
  return diff / nrm;
}

NormalFrame curve_normal_frame(const DiscreteCurve& curve, int i) {
  if (curve.dim() != 3)
    throw ValidationError("geometry.curve_normal_frame: requires ambient dimension 3");
  const Vec t = curve_tangent(curve, i);
  const std::vector<Vec> comp = orthonormal_complement({t}, 3);
  NormalFrame frame;
  frame.e1 = comp[0];
  frame.e2 = comp[1];
  frame.orientation_sign = det3(t, frame.e1, frame.e2) > 0 ? -1.0 : 1.0;
  return frame;
}

DiscreteCurve resample_uniform(const DiscreteCurve& curve) {
  if (!curve.closed)
    throw ValidationError("geometry.resample_uniform: only closed curves are resampled");
  const int m = curve.size();
  std::vector<double> cum(m + 1, 0.0);
  for (int i = 0; i < m; ++i)
    cum[i + 1] = cum[i] + (curve.points[curve.wrap(i + 1)] - curve.points[i]).norm();
  const double total = cum[m];
  DiscreteCurve out;
  out.closed = true;
  out.points.reserve(m);
  int seg = 0;
  for (int k = 0; k < m; ++k) {
    const double s = total * double(k) / double(m);
    while (seg + 1 < m && cum[seg + 1] <= s) ++seg;
    const double local = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
    out.points.push_back(curve.points[seg] +
                         local * (curve.points[curve.wrap(seg + 1)] - curve.points[seg]));
  }
  return out;
}

namespace {

double segment_distance(const Vec& p1, const Vec& p2, const Vec& q1, const Vec& q2) {
  // Closest distance between segments [p1,p2] and [q1,q2] (any dimension).
  const Vec d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a > 0) {
    const double c = d1.dot(r), b = d1.dot(d2);
    const double denom = a * e - b * b;
    if (denom > 1e-30) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
    t = e > 0 ? std::clamp((b * s + f) / e, 0.0, 1.0) : 0.0;
    s = std::clamp((d1.dot(q1 + t * d2 - p1)) / a, 0.0, 1.0);
  } else if (e > 0) {
    t = std::clamp(f / e, 0.0, 1.0);
  }
  return ((p1 + s * d1) - (q1 + t * d2)).norm();
}

} // namespace

bool has_self_intersection(const DiscreteCurve& curve, double tol) {
  const int m = curve.size();
  const int edges = curve.closed ? m : m - 1;
  for (int i = 0; i < edges; ++i) {
    for (int j = i + 2; j < edges; ++j) {
      if (curve.closed && i == 0 && j == edges - 1) continue; // adjacent across the seam
      const double d = segment_distance(curve.points[i], curve.points[curve.wrap(i + 1)],
                                        curve.points[j], curve.points[curve.wrap(j + 1)]);
      if (d < tol) return true;
    }
  }
  return false;
}

} // namespace vortex
