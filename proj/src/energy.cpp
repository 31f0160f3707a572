#include "vortex/energy.hpp"

#include "vortex/parallel.hpp"

#include "vortex/biotsavart.hpp"
#include "vortex/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vortex {

namespace {

void check_eps(const std::vector<double>& eps_list, double h, const char* where) {
  if (eps_list.empty()) throw ValidationError(std::string(where) + ": empty eps list");
  for (double eps : eps_list)
    if (eps < 3.0 * h)
      throw ValidationError(std::string(where) + ": truncation below mesh resolution (eps " +
                            std::to_string(eps) + " < 3h = " + std::to_string(3.0 * h) + ")");
}

struct QuadPoints {
  std::vector<Vec> point;
  std::vector<double> weight; // area or edge length
  int ambient = 0;
};

QuadPoints mesh_points(const TriangleMesh& mesh) {
  QuadPoints qp;
  qp.ambient = mesh.dim();
  qp.point.reserve(mesh.triangle_count());
  qp.weight.reserve(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    qp.point.push_back(mesh.triangle_centroid(t));
    qp.weight.push_back(mesh.triangle_area(t));
  }
  return qp;
}

QuadPoints curve_points(const DiscreteCurve& curve) {
  QuadPoints qp;
  qp.ambient = curve.dim();
  const int edges = curve.closed ? curve.size() : curve.size() - 1;
  for (int i = 0; i < edges; ++i) {
    const Vec& a = curve.points[i];
    const Vec& b = curve.points[curve.wrap(i + 1)];
    qp.point.push_back(0.5 * (a + b));
    qp.weight.push_back((b - a).norm());
  }
  return qp;
}

// One pass over all ordered pairs, bucketed by the largest eps each pair
// clears; per-row partials are reduced in row order so the result is
// deterministic and thread-count independent.
std::vector<double> profile_impl(const QuadPoints& qp, double strength,
                                 const std::vector<double>& eps_list, bool parallel) {
  std::vector<double> eps_sorted = eps_list;
  std::sort(eps_sorted.begin(), eps_sorted.end());
  const int k = int(eps_sorted.size());
  const int m = int(qp.point.size());
  const int n = qp.ambient;
  const double pref = 0.5 * strength * strength;
  // kernel: -G(q,p) = |q-p|^{2-n} / ((n-2) sigma_{n-1})
  const double kernel_scale = 1.0 / ((double(n) - 2.0) * unit_sphere_area(n - 1));

  std::vector<double> buckets(size_t(m) * k, 0.0);
  auto row = [&](int i) {
    double* b = &buckets[size_t(i) * k];
    const Vec& qi = qp.point[i];
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double d = (qp.point[j] - qi).norm();
      if (d < eps_sorted[0]) continue;
      const int idx =
          int(std::upper_bound(eps_sorted.begin(), eps_sorted.end(), d) - eps_sorted.begin()) - 1;
      b[idx] += pref * kernel_scale * std::pow(d, 2.0 - double(n)) * qp.weight[i] * qp.weight[j];
    }
  };
  if (parallel) {
    parallel_indexed(m, row);
  } else {
    for (int i = 0; i < m; ++i) row(i);
  }

  std::vector<double> by_bucket(k, 0.0);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < k; ++c) by_bucket[c] += buckets[size_t(i) * k + c];
  // suffix sums: E(eps_sorted[c]) counts every pair with distance >= eps_sorted[c]
  std::vector<double> by_eps(k, 0.0);
  double acc = 0.0;
  for (int c = k - 1; c >= 0; --c) {
    acc += by_bucket[c];
    by_eps[c] = acc;
  }
  std::vector<double> out(eps_list.size());
  for (size_t i = 0; i < eps_list.size(); ++i) {
    const int idx = int(std::lower_bound(eps_sorted.begin(), eps_sorted.end(), eps_list[i]) -
                        eps_sorted.begin());
    out[i] = by_eps[idx];
  }
  return out;
}

EnergySlopeResult slope_impl(const std::vector<double>& eps_list, const std::vector<double>& e,
                             double volume) {
  if (eps_list.size() < 5)
    throw ValidationError("energy.energy_slope: need at least 5 eps values");
  const auto [mn, mx] = std::minmax_element(eps_list.begin(), eps_list.end());
  if (*mx / *mn < 10.0 * (1.0 - 1e-9))
    throw ValidationError("energy.energy_slope: eps values must span at least one decade");
  // canonical (descending-eps) order makes the fit independent of list order
  std::vector<size_t> order(eps_list.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return eps_list[a] > eps_list[b]; });
  std::vector<double> x(eps_list.size()), y(eps_list.size());
  for (size_t i = 0; i < order.size(); ++i) {
    x[i] = std::log(1.0 / eps_list[order[i]]);
    y[i] = e[order[i]];
  }
  const AffineFit fit = fit_affine(x, y);
  if (fit.rel_residual > 0.20)
    throw NumericalError("energy.energy_slope: asymptotic regime not reached (fit residual " +
                         std::to_string(fit.rel_residual) + ")");
  EnergySlopeResult out;
  out.slope = fit.slope;
  out.slope_per_volume = fit.slope / volume;
  out.fit_residual = fit.rel_residual;
  return out;
}

} // namespace

std::vector<double> energy_profile(const TriangleMesh& mesh, const std::vector<double>& eps_list) {
  check_eps(eps_list, max_edge_length(mesh), "energy.regularized_energy");
  return profile_impl(mesh_points(mesh), mesh.strength, eps_list, true);
}

std::vector<double> energy_profile_serial(const TriangleMesh& mesh,
                                          const std::vector<double>& eps_list) {
  check_eps(eps_list, max_edge_length(mesh), "energy.regularized_energy");
  return profile_impl(mesh_points(mesh), mesh.strength, eps_list, false);
}

std::vector<double> energy_profile(const DiscreteCurve& curve, double strength,
                                   const std::vector<double>& eps_list) {
  check_eps(eps_list, max_edge_length(curve), "energy.regularized_energy");
  return profile_impl(curve_points(curve), strength, eps_list, true);
}

double regularized_energy(const TriangleMesh& mesh, double eps) {
  return energy_profile(mesh, {eps})[0];
}

double regularized_energy(const DiscreteCurve& curve, double strength, double eps) {
  return energy_profile(curve, strength, {eps})[0];
}

EnergySlopeResult energy_slope(const TriangleMesh& mesh, const std::vector<double>& eps_list) {
  return slope_impl(eps_list, energy_profile(mesh, eps_list), mesh.total_area());
}

EnergySlopeResult energy_slope(const DiscreteCurve& curve, double strength,
                               const std::vector<double>& eps_list) {
  return slope_impl(eps_list, energy_profile(curve, strength, eps_list), curve_length(curve));
}

} // namespace vortex
