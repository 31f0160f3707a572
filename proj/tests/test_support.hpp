#pragma once

#include "vortex/numerics.hpp"
#include "vortex/types.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace vortex::testing {

// Central-difference gradient of a scalar function of one Vec.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h = 1e-6) {
  Vec g = zero_vec(int(x.size()));
  for (int k = 0; k < int(x.size()); ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Deterministic rotation in the (i, j) coordinate plane composed over several
// planes; returns an n x n orthogonal matrix with determinant +1.
inline MatN random_rotation(int n, unsigned seed) {
  DeterministicRng rng(seed);
  MatN q = MatN::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
      MatN g = MatN::Identity(n, n);
      g(i, i) = std::cos(th);
      g(j, j) = std::cos(th);
      g(i, j) = -std::sin(th);
      g(j, i) = std::sin(th);
      q = g * q;
    }
  return q;
}

inline std::vector<Vec> random_fields(int count, int dim, unsigned seed, double scale = 1.0) {
  DeterministicRng rng(seed);
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec v = zero_vec(dim);
    for (int k = 0; k < dim; ++k) v[k] = rng.uniform(-scale, scale);
    out.push_back(v);
  }
  return out;
}

} // namespace vortex::testing
