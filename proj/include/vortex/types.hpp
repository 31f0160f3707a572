#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortex {

// Ambient dimensions are small (2..5 in practice); capping the vector size
// keeps every Vec on the stack, which matters in the quadrature kernels.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using MatN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

inline Vec zero_vec(int n) { return Vec::Zero(n); }

inline Vec make_vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec make_vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline Vec make_vec4(double x, double y, double z, double w) {
  Vec v(4);
  v << x, y, z, w;
  return v;
}

inline Vec cross3(const Vec& a, const Vec& b) {
  Vec c(3);
  c[0] = a[1] * b[2] - a[2] * b[1];
  c[1] = a[2] * b[0] - a[0] * b[2];
  c[2] = a[0] * b[1] - a[1] * b[0];
  return c;
}

inline double det2(const Vec& a, const Vec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

inline double det3(const Vec& a, const Vec& b, const Vec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline double det4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) m.col(0)[i] = a[i], m.col(1)[i] = b[i], m.col(2)[i] = c[i], m.col(3)[i] = d[i];
  return m.determinant();
}

// Input/contract violations (bad files, bad meshes, bad arguments). CLI exit 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failures (stalled iterations, unusable fits, collisions). CLI exit 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vortex
