#pragma once

#include "vortex/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace vortex {

// Surface area of the unit (m)-sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
inline double unit_sphere_area(int m) {
  const double half = 0.5 * static_cast<double>(m + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

struct AffineFit {
  double intercept = 0.0;
  double slope = 0.0;
  // RMS residual divided by the RMS of the explained deviation slope*(x - mean(x)).
  double rel_residual = 0.0;
};

// Least-squares y = a + b x.
inline AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) sx += x[i], sy += y[i];
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  AffineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0, ss_exp = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
    const double e = f.slope * (x[i] - mx);
    ss_exp += e * e;
  }
  f.rel_residual = ss_exp > 0 ? std::sqrt(ss_res / ss_exp) : (ss_res > 0 ? 1e300 : 0.0);
  return f;
}

struct VectorAffineFit {
  Vec intercept;
  Vec slope;
  double rel_residual = 0.0; // Frobenius analogue of AffineFit::rel_residual
};

// Componentwise least-squares fit of vector samples y_i = a + b x_i.
inline VectorAffineFit fit_affine_vec(const std::vector<double>& x, const std::vector<Vec>& y) {
  const size_t n = x.size();
  const int dim = y.at(0).size();
  double sx = 0;
  for (size_t i = 0; i < n; ++i) sx += x[i];
  const double mx = sx / double(n);
  Vec my = zero_vec(dim);
  for (size_t i = 0; i < n; ++i) my += y[i];
  my /= double(n);
  double sxx = 0;
  Vec sxy = zero_vec(dim);
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  VectorAffineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0, ss_exp = 0;
  for (size_t i = 0; i < n; ++i) {
    ss_res += (y[i] - (f.intercept + f.slope * x[i])).squaredNorm();
    ss_exp += (f.slope * (x[i] - mx)).squaredNorm();
  }
  f.rel_residual = ss_exp > 0 ? std::sqrt(ss_res / ss_exp) : (ss_res > 0 ? 1e300 : 0.0);
  return f;
}

// Minimal splitmix-style generator with a portable uniform mapping. std::mt19937 is
// portable but the distributions are not; fixture files must be byte-identical
// across standard libraries, so the mapping is spelled out here.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

inline double angle_between_deg(const Vec& a, const Vec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c = a.dot(b) / (na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

// Angle between the lines spanned by a and b (sign of either vector ignored), degrees in [0, 90].
inline double line_angle_deg(const Vec& a, const Vec& b) {
  const double ang = angle_between_deg(a, b);
  return ang > 90.0 ? 180.0 - ang : ang;
}

} // namespace vortex
