#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_support.hpp"
#include "vortex/fixtures.hpp"
#include "vortex/membrane_flow.hpp"
#include "vortex/symplectic.hpp"

#include <cmath>
#include <numbers>

using namespace vortex;
constexpr double kPi = std::numbers::pi;

TEST_CASE("kk form: antisymmetry, single-term value, bracket reciprocity") {
  VortexConfig2D cfg;
  cfg.positions = {make_vec2(0.2, 0.4)};
  cfg.strengths = {3.0};
  const std::vector<Vec> ex = {make_vec2(1, 0)};
  const std::vector<Vec> ey = {make_vec2(0, 1)};
  CHECK(kk_form_points(cfg, ex, ey) == doctest::Approx(3.0));
  CHECK(kk_form_points(cfg, ex, ex) == 0.0);

  // the bracket is the inverse structure: canonical gradients give 1/kappa
  const VortexConfig2D multi = make_random_vortices(4, 55);
  for (int j = 0; j < multi.count(); ++j) {
    std::vector<Vec> gx(multi.count(), make_vec2(0, 0)), gy(multi.count(), make_vec2(0, 0));
    gx[j] = make_vec2(1, 0);
    gy[j] = make_vec2(0, 1);
    const double bracket = poisson_bracket(multi, gx, gy);
    const double form = kk_form_points(multi, gx, gy);
    CHECK(bracket * form == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mw form on the unit circle: e_z against the outward radial gives 2 pi") {
  DiscreteCurve ring = make_circle3d(1024, 1.0);
  std::vector<Vec> v(ring.size(), make_vec3(0, 0, 1)), w(ring.size());
  for (int i = 0; i < ring.size(); ++i) w[i] = ring.points[i] / ring.points[i].norm();
  CHECK(std::abs(mw_form_curve(ring, v, w) - 2.0 * kPi) < 1e-3);
  CHECK(mw_form_curve(ring, v, v) == 0.0);
}

TEST_CASE("mw form on curves is refinement invariant") {
  auto fieldV = [](const Vec& p) { return make_vec3(0.3 * p[2] + 0.1, p[0] * 0.2, 0.7); };
  auto fieldW = [](const Vec& p) { return make_vec3(0.5, 0.2 - 0.4 * p[1], 0.1 * p[0]); };
  double values[2];
  int idx = 0;
  for (int m : {512, 1024}) {
    DiscreteCurve c = make_wavy_circle(m, 0.15, 3);
    std::vector<Vec> v, w;
    for (const Vec& p : c.points) {
      v.push_back(fieldV(p));
      w.push_back(fieldW(p));
    }
    values[idx++] = mw_form_curve(c, v, w);
  }
  CHECK(std::abs(values[1] - values[0]) <= 1e-3 * std::abs(values[1]));
}

TEST_CASE("mw form on the membrane: oriented normal frame field gives the volume") {
  TriangleMesh sphere = make_icosphere(4, 1.0, 4);
  const auto frames = vertex_frames_all(sphere);
  std::vector<Vec> v(sphere.vertex_count()), w(sphere.vertex_count());
  for (int i = 0; i < sphere.vertex_count(); ++i) {
    v[i] = frames[i].e1;
    w[i] = rotate_J_unchecked(frames[i], frames[i].e1); // J(V)
  }
  double resid = 0.0;
  const double val = mw_form_membrane(sphere, v, w, &resid);
  CHECK(val == doctest::Approx(4.0 * kPi).epsilon(0.01));
  CHECK(resid < 1e-10);
  CHECK(mw_form_membrane(sphere, v, v) == doctest::Approx(0.0));
}

TEST_CASE("form evaluators are bilinear and antisymmetric to 1e-12") {
  TriangleMesh sphere = make_icosphere(3, 1.0, 4);
  const int nv = sphere.vertex_count();
  const auto v = testing::random_fields(nv, 4, 101);
  const auto w = testing::random_fields(nv, 4, 202);
  const double vw = mw_form_membrane(sphere, v, w);
  const double wv = mw_form_membrane(sphere, w, v);
  CHECK(std::abs(vw + wv) <= 1e-12 * std::abs(vw));
  std::vector<Vec> scaled = v;
  for (Vec& x : scaled) x *= 2.5;
  CHECK(std::abs(mw_form_membrane(sphere, scaled, w) - 2.5 * vw) <= 1e-12 * std::abs(vw));

  // sheet form
  VortexSheet sheet = make_sphere_band_sheet(3, 0.3);
  const int ns = sheet.mesh.vertex_count();
  const auto a = testing::random_fields(ns, 3, 303);
  const auto b = testing::random_fields(ns, 3, 404);
  const double ab = sheet_form(sheet, a, b);
  CHECK(std::abs(sheet_form(sheet, b, a) + ab) <= 1e-12 * std::abs(ab));
  std::vector<Vec> lin = a;
  for (size_t i = 0; i < lin.size(); ++i) lin[i] = 2.0 * a[i] + 0.5 * b[i];
  CHECK(std::abs(sheet_form(sheet, lin, b) - 2.0 * ab) <= 1e-11 * std::abs(ab));
}

TEST_CASE("sheet pairing: sphere closed forms and gauge behavior") {
  TriangleMesh m = make_icosphere(4, 1.0, 3);
  std::vector<double> f(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) f[v] = m.vertices[v][2];
  const VortexSheet sheet = VortexSheet::from_potential(std::move(m), f);

  const int nt = sheet.mesh.triangle_count();
  std::vector<Vec> ez(nt, make_vec3(0, 0, 1));
  CHECK(sheet_pairing(sheet, ez) == doctest::Approx(4.0 * kPi / 3.0).epsilon(0.01));

  // constant potential x divergence-free field = const * total flux = 0
  std::vector<double> ones(sheet.mesh.vertex_count(), 1.0);
  const VortexSheet const_sheet = VortexSheet::from_potential(sheet.mesh, ones);
  CHECK(std::abs(sheet_pairing(const_sheet, ez)) < 1e-6);

  // tangential fields pair to zero
  std::vector<Vec> tangent(nt);
  for (int t = 0; t < nt; ++t) {
    const Vec c = sheet.mesh.triangle_centroid(t);
    tangent[t] = cross3(make_vec3(0, 0, 1), c); // azimuthal
    const auto& tri = sheet.mesh.triangles[t];
    const Vec u = sheet.mesh.vertices[tri[1]] - sheet.mesh.vertices[tri[0]];
    const Vec w = sheet.mesh.vertices[tri[2]] - sheet.mesh.vertices[tri[0]];
    const Vec n = cross3(u, w).normalized();
    tangent[t] -= tangent[t].dot(n) * n; // exactly tangent to the panel
  }
  CHECK(std::abs(sheet_pairing(sheet, tangent)) < 1e-12);

  // gauge: f -> f + c shifts the pairing by exactly c * flux(V)
  std::vector<double> shifted(sheet.mesh.vertex_count());
  const std::vector<double>& base = *sheet.potential;
  for (size_t i = 0; i < shifted.size(); ++i) shifted[i] = base[i] + 2.5;
  const VortexSheet gauge = VortexSheet::from_potential(sheet.mesh, shifted);
  double flux = 0.0;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = sheet.mesh.triangles[t];
    const Vec u = sheet.mesh.vertices[tri[1]] - sheet.mesh.vertices[tri[0]];
    const Vec w = sheet.mesh.vertices[tri[2]] - sheet.mesh.vertices[tri[0]];
    flux += 0.5 * cross3(u, w).dot(ez[t]);
  }
  const double lhs = sheet_pairing(gauge, ez);
  const double rhs = sheet_pairing(sheet, ez) + 2.5 * flux;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("pairing requires an exact alpha") {
  VortexSheet torus = make_torus_band_sheet(24, 16, 1.0, 0.4);
  std::vector<Vec> ez(torus.mesh.triangle_count(), make_vec3(0, 0, 1));
  CHECK_THROWS_WITH_AS(sheet_pairing(torus, ez), doctest::Contains("non-exact alpha"),
                       ValidationError);
}

TEST_CASE("non-closed alpha is rejected at construction") {
  TriangleMesh m = make_icosphere(1, 1.0, 3);
  std::map<std::pair<int, int>, double> alpha;
  for (const auto& tri : m.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      alpha[{std::min(a, b), std::max(a, b)}] = a + 0.3 * b; // garbage, not closed
    }
  CHECK_THROWS_WITH_AS(VortexSheet::from_cochain(std::move(m), std::move(alpha)),
                       doctest::Contains("not closed"), ValidationError);
}

TEST_CASE("torus d(theta) cochain is closed and survives validation") {
  VortexSheet torus = make_torus_band_sheet(32, 16, 1.0, 0.35);
  CHECK_NOTHROW(torus.validate());
  CHECK_FALSE(torus.potential.has_value());
}

TEST_CASE("sheet form with f = z against e_x, e_y vanishes identically") {
  TriangleMesh m = make_icosphere(3, 1.0, 3);
  std::vector<double> f(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) f[v] = m.vertices[v][2];
  const VortexSheet sheet = VortexSheet::from_potential(std::move(m), std::move(f));
  const std::vector<Vec> ex(sheet.mesh.vertex_count(), make_vec3(1, 0, 0));
  const std::vector<Vec> ey(sheet.mesh.vertex_count(), make_vec3(0, 1, 0));
  CHECK(std::abs(sheet_form(sheet, ex, ey)) < 1e-8);
}

TEST_CASE("band-limit reduction: sheet form converges to the equator mw form") {
  // f ramps 0 -> 1 across the band around the equator (increasing with z, so
  // the limit curve is the equator oriented clockwise seen from +z).
  auto fieldV = [](const Vec& p) { return make_vec3(0.2 + 0.3 * p[2], -0.1 * p[0], 0.5); };
  auto fieldW = [](const Vec& p) { return make_vec3(0.4 * p[1], 0.25, -0.3 + 0.2 * p[0]); };

  DiscreteCurve equator = make_circle3d(512, 1.0);
  std::reverse(equator.points.begin(), equator.points.end());
  std::vector<Vec> v, w;
  for (const Vec& p : equator.points) {
    v.push_back(fieldV(p));
    w.push_back(fieldW(p));
  }
  const double target = mw_form_curve(equator, v, w);

  double prev_err = 1e300;
  for (double width : {0.3, 0.2, 0.1}) {
    const VortexSheet sheet = make_sphere_band_sheet(5, width);
    std::vector<Vec> sv, sw;
    for (const Vec& p : sheet.mesh.vertices) {
      sv.push_back(fieldV(p));
      sw.push_back(fieldW(p));
    }
    const double err = std::abs(sheet_form(sheet, sv, sw) - target) / std::abs(target);
    CHECK(err < 0.03);
    CHECK(err < prev_err + 1e-12);
    prev_err = err;
  }
}

TEST_CASE("cylinder fibration translates fiberwise with conserved family Hamiltonian") {
  SheetFibration fib = make_cylinder_fibration(8, 64, 0.125);
  fib.validate();
  const double h0 = fib.family_hamiltonian();
  SheetFibration state = fib;
  const int steps = 100;
  const double dt = 1e-3;
  for (int s = 0; s < steps; ++s) state = sheet_family_binormal_step(state, dt);
  for (size_t k = 0; k < state.fibers.size(); ++k) {
    for (int i = 0; i < state.fibers[k].size(); i += 16) {
      Vec expected = fib.fibers[k].points[i];
      expected[2] += steps * dt; // unit circles rise at speed 1
      CHECK((state.fibers[k].points[i] - expected).norm() < 1e-6);
    }
  }
  CHECK(std::abs(state.family_hamiltonian() - h0) / h0 < 1e-4);
}

TEST_CASE("dt = 0 keeps the fibration; a single fiber reproduces evolve_filament") {
  SheetFibration fib = make_cylinder_fibration(3, 32, 0.5);
  const SheetFibration same = sheet_family_binormal_step(fib, 0.0);
  for (size_t k = 0; k < fib.fibers.size(); ++k)
    for (int i = 0; i < fib.fibers[k].size(); ++i)
      CHECK((same.fibers[k].points[i] - fib.fibers[k].points[i]).norm() == 0.0);

  SheetFibration single;
  single.df = 1.0;
  single.fibers = {make_perturbed_circle(64, 0.05, 17)};
  const SheetFibration stepped = sheet_family_binormal_step(single, 1e-4);
  const DiscreteCurve direct = evolve_filament(single.fibers[0], 1e-4, 1).final;
  for (int i = 0; i < direct.size(); ++i)
    CHECK((stepped.fibers[0].points[i] - direct.points[i]).norm() == 0.0);
}
