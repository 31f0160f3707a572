#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_support.hpp"
#include "vortex/curve.hpp"
#include "vortex/fixtures.hpp"
#include "vortex/mesh_geometry.hpp"

#include <cmath>
#include <numbers>

using namespace vortex;
constexpr double kPi = std::numbers::pi;

TEST_CASE("curvature of circle polygonizations is exactly 1/R") {
  // Three points of a circle determine that circle, whatever the spacing.
  for (double r : {1.0, 2.0}) {
    DiscreteCurve c = make_circle3d(256, r);
    for (int i : {0, 17, 100}) {
      const Vec kn = curvature_vector(c, i);
      CHECK(kn.norm() == doctest::Approx(1.0 / r).epsilon(1e-3));
      const Vec toward_center = -c.points[i] / c.points[i].norm();
      CHECK(kn.dot(toward_center) > 0.999 * kn.norm());
    }
  }
}

TEST_CASE("collinear points have zero curvature, repeated points are an error") {
  DiscreteCurve c;
  c.closed = false;
  c.points = {make_vec3(0, 0, 0), make_vec3(1, 0, 0), make_vec3(2, 0, 0), make_vec3(3, 1, 0)};
  CHECK(curvature_vector(c, 1).norm() == 0.0);

  DiscreteCurve bad = c;
  bad.points[2] = bad.points[1];
  CHECK_THROWS_WITH_AS(curvature_vector(bad, 1), doctest::Contains("degenerate edge"),
                       ValidationError);
}

TEST_CASE("curvature estimator is second order on a smooth non-circular curve") {
  // r(theta) = 1 + 0.2 cos(3 theta); closed-form curvature at theta = 0.
  const double r0 = 1.2, rpp = -1.8;
  const double k_exact = (r0 * r0 - r0 * rpp) / std::pow(r0 * r0, 1.5);
  std::vector<double> hs, errs;
  for (int m : {64, 128, 256, 512}) {
    DiscreteCurve c = make_wavy_circle(m, 0.2, 3);
    const double k = curvature_vector(c, 0).norm();
    hs.push_back(std::log(2.0 * kPi / m));
    errs.push_back(std::log(std::abs(k - k_exact)));
  }
  const AffineFit fit = fit_affine(hs, errs);
  CHECK(fit.slope >= 1.9);
}

TEST_CASE("curve length: polygon closed forms and scaling") {
  DiscreteCurve c = make_circle3d(1024, 1.0);
  const double perimeter = curve_length(c);
  CHECK(perimeter == doctest::Approx(2.0 * 1024 * std::sin(kPi / 1024)).epsilon(1e-12));
  CHECK(perimeter == doctest::Approx(2.0 * kPi).epsilon(1e-4 / (2.0 * kPi)));

  DiscreteCurve square;
  square.closed = true;
  square.points = {make_vec3(0, 0, 0), make_vec3(1, 0, 0), make_vec3(1, 1, 0), make_vec3(0, 1, 0)};
  CHECK(curve_length(square) == doctest::Approx(4.0));

  DiscreteCurve scaled = c;
  for (Vec& p : scaled.points) p *= 2.5;
  CHECK(curve_length(scaled) == doctest::Approx(2.5 * perimeter).epsilon(1e-12));
}

TEST_CASE("mean curvature of spheres in R^4") {
  for (double r : {1.0, 2.0}) {
    TriangleMesh sphere = make_icosphere(4, r, 4);
    REQUIRE(sphere.vertex_count() == 2562);
    for (int v : {0, 100, 1500}) {
      const Vec mc = mean_curvature(sphere, v);
      CHECK(mc.norm() == doctest::Approx(1.0 / r).epsilon(2e-2 * r));
      const Vec inward = -sphere.vertices[v] / sphere.vertices[v].norm();
      CHECK(angle_between_deg(mc, inward) < 1.0);
      CHECK(std::abs(mc[3]) < 1e-10);
    }
  }
}

TEST_CASE("mean curvature agrees with the great-circle-average oracle on the unit sphere") {
  // Independent oracle: average of geodesic (great circle) curvature vectors
  // over 64 tangent directions, each measured by finite differences on the
  // analytic sphere through the vertex's radial projection.
  TriangleMesh sphere = make_icosphere(4, 1.0, 4);
  for (int v : {3, 700}) {
    Vec u = sphere.vertices[v];
    u /= u.norm(); // analytic surface point
    // tangent basis of S^2 at u inside R^3 x {0}
    Vec a = make_vec4(-u[1], u[0], 0, 0);
    if (a.norm() < 1e-6) a = make_vec4(0, -u[2], u[1], 0);
    a /= a.norm();
    Vec b = make_vec4(u[1] * a[2] - u[2] * a[1], u[2] * a[0] - u[0] * a[2],
                      u[0] * a[1] - u[1] * a[0], 0);
    Vec oracle = zero_vec(4);
    const double h = 1e-4;
    for (int k = 0; k < 64; ++k) {
      const double th = 2.0 * kPi * k / 64.0;
      const Vec d = std::cos(th) * a + std::sin(th) * b;
      auto gamma = [&](double t) { return Vec(std::cos(t) * u + std::sin(t) * d); };
      oracle += (gamma(h) - 2.0 * gamma(0.0) + gamma(-h)) / (h * h);
    }
    oracle /= 64.0;
    const Vec mc = mean_curvature(sphere, v);
    CHECK((mc - oracle).norm() < 0.03 * oracle.norm());
  }
}

TEST_CASE("flat patch interior vertex has zero mean curvature, boundary vertex errors") {
  TriangleMesh patch = make_flat_patch4d(9, 1.0);
  const int center = 4 * 9 + 4;
  CHECK(mean_curvature(patch, center).norm() < 1e-10);
  CHECK_THROWS_WITH_AS(mean_curvature(patch, 0), doctest::Contains("full triangle fan"),
                       ValidationError);
}

TEST_CASE("degenerate fan reports a degenerate vertex area") {
  // Sliver fan: vertex ringed by near-collinear triangles, all obtuse away
  // from the center with vanishing mixed area. Constructed raw (no validate).
  TriangleMesh bad;
  bad.vertices = {make_vec4(0, 0, 0, 0), make_vec4(1, 0, 0, 0), make_vec4(-1, 0, 0, 0),
                  make_vec4(0.5, 0, 0, 0)};
  bad.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}};
  CHECK_THROWS_WITH_AS(mean_curvature(bad, 0), doctest::Contains("degenerate vertex area"),
                       ValidationError);
}

TEST_CASE("normal frame spans the expected planes") {
  TriangleMesh sphere = make_icosphere(4, 1.0, 4);
  for (int v : {0, 42, 500}) {
    const NormalFrame fr = vertex_normal_frame(sphere, v);
    Vec u = sphere.vertices[v];
    u /= u.norm();
    const Vec e4 = make_vec4(0, 0, 0, 1);
    // the plane spanned by (e1, e2) must match span{u, e4}
    auto in_span = [&](const Vec& w) {
      const Vec resid = w - w.dot(u) * u - w.dot(e4) * e4;
      return resid.norm();
    };
    CHECK(in_span(fr.e1) < std::sin(1.0 * kPi / 180.0));
    CHECK(in_span(fr.e2) < std::sin(1.0 * kPi / 180.0));
    CHECK(std::abs(fr.e1.dot(fr.e1) - 1.0) < 1e-10);
    CHECK(std::abs(fr.e2.dot(fr.e2) - 1.0) < 1e-10);
    CHECK(std::abs(fr.e1.dot(fr.e2)) < 1e-10);
  }

  TriangleMesh patch = make_flat_patch4d(9, 1.0);
  const NormalFrame fr = vertex_normal_frame(patch, 4 * 9 + 4);
  CHECK(std::abs(fr.e1[0]) < 1e-12);
  CHECK(std::abs(fr.e1[1]) < 1e-12);
  CHECK(std::abs(fr.e2[0]) < 1e-12);
  CHECK(std::abs(fr.e2[1]) < 1e-12);
}

TEST_CASE("normal frame is rotation equivariant as a plane") {
  TriangleMesh sphere = make_icosphere(3, 1.0, 4);
  const MatN q = testing::random_rotation(4, 7);
  TriangleMesh rotated = sphere;
  for (Vec& p : rotated.vertices) p = q * p;
  for (int v : {11, 321}) {
    const NormalFrame a = vertex_normal_frame(sphere, v);
    const NormalFrame b = vertex_normal_frame(rotated, v);
    const MatN pa = a.e1 * a.e1.transpose() + a.e2 * a.e2.transpose();
    const MatN pb = b.e1 * b.e1.transpose() + b.e2 * b.e2.transpose();
    CHECK((q * pa * q.transpose() - pb).norm() < 1e-8);
  }
}

TEST_CASE("rank-deficient fan is a degenerate tangent estimate") {
  TriangleMesh bad;
  bad.vertices = {make_vec4(0, 0, 0, 0), make_vec4(1, 0, 0, 0), make_vec4(2, 0, 0, 0),
                  make_vec4(3, 0, 0, 0)};
  bad.triangles = {{0, 1, 2}, {0, 2, 3}};
  CHECK_THROWS_WITH_AS(vertex_normal_frame(bad, 0), doctest::Contains("degenerate tangent"),
                       ValidationError);
}

TEST_CASE("rotate_J: quarter turn, J^2 = -1, isometry, plane membership") {
  NormalFrame fr;
  fr.e1 = make_vec4(1, 0, 0, 0);
  fr.e2 = make_vec4(0, 0, 0, 1);
  fr.orientation_sign = 1.0;
  CHECK((rotate_J(fr, fr.e1) - fr.e2).norm() < 1e-15);

  fr.orientation_sign = -1.0;
  CHECK((rotate_J(fr, fr.e1) + fr.e2).norm() < 1e-15);

  DeterministicRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec w = rng.uniform(-2, 2) * fr.e1 + rng.uniform(-2, 2) * fr.e2;
    const Vec jw = rotate_J(fr, w);
    CHECK(std::abs(jw.norm() - w.norm()) < 1e-14 * std::max(1.0, w.norm()));
    CHECK((rotate_J(fr, jw) + w).norm() < 1e-14 * std::max(1.0, w.norm()));
  }

  CHECK_THROWS_WITH_AS(rotate_J(fr, make_vec4(0.5, 1.0, 0, 0.5)),
                       doctest::Contains("vector not normal"), ValidationError);
}

TEST_CASE("membrane volume: icosphere area, quadratic scaling, zero-area triangles") {
  TriangleMesh sphere = make_icosphere(4, 1.0, 4);
  CHECK(sphere.total_area() == doctest::Approx(4.0 * kPi).epsilon(0.005));

  TriangleMesh scaled = sphere;
  for (Vec& p : scaled.vertices) p *= 3.0;
  CHECK(scaled.total_area() == doctest::Approx(9.0 * sphere.total_area()).epsilon(1e-12));

  TriangleMesh degenerate;
  degenerate.vertices = {make_vec4(0, 0, 0, 0), make_vec4(1, 0, 0, 0), make_vec4(2, 0, 0, 0)};
  degenerate.triangles = {{0, 1, 2}};
  CHECK(degenerate.total_area() == 0.0);
}

TEST_CASE("geometry is translation invariant and rotation equivariant") {
  TriangleMesh sphere = make_icosphere(3, 1.0, 4);
  const MatN q = testing::random_rotation(4, 19);
  const Vec shift = make_vec4(0.3, -1.1, 0.7, 2.0);
  TriangleMesh moved = sphere;
  for (Vec& p : moved.vertices) p = q * p + shift;
  for (int v : {5, 99, 640}) {
    const Vec a = mean_curvature(sphere, v);
    const Vec b = mean_curvature(moved, v);
    CHECK((q * a - b).norm() < 1e-8);
  }
  CHECK(std::abs(sphere.total_area() - moved.total_area()) < 1e-8);
}

TEST_CASE("mesh validation catches open, inconsistent and disconnected meshes") {
  TriangleMesh sphere = make_icosphere(1, 1.0, 3);
  CHECK_NOTHROW(sphere.validate(true));
  CHECK(sphere.is_closed());

  TriangleMesh open_mesh = sphere;
  open_mesh.triangles.pop_back();
  CHECK_THROWS_WITH_AS(open_mesh.validate(true), doctest::Contains("not closed"), ValidationError);
  CHECK_NOTHROW(open_mesh.validate(false));

  TriangleMesh flipped = sphere;
  std::swap(flipped.triangles[0][1], flipped.triangles[0][2]);
  CHECK_THROWS_WITH_AS(flipped.validate(false), doctest::Contains("orientation"), ValidationError);
}
