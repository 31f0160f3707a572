#include "vortex/fixtures.hpp"

#include "vortex/numerics.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace vortex {

namespace {
constexpr double kPi = std::numbers::pi;
}

DiscreteCurve make_circle3d(int segments, double radius) {
  DiscreteCurve c;
  c.closed = true;
  c.points.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    const double th = 2.0 * kPi * double(i) / double(segments);
    c.points.push_back(make_vec3(radius * std::cos(th), radius * std::sin(th), 0.0));
  }
  return c;
}

DiscreteCurve make_helix(int samples, double a, double b, double turns) {
  DiscreteCurve c;
  c.closed = false;
  c.points.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * turns * double(i) / double(samples - 1);
    c.points.push_back(make_vec3(a * std::cos(t), a * std::sin(t), b * t));
  }
  return c;
}

DiscreteCurve make_wavy_circle(int segments, double amp, int k) {
  DiscreteCurve c;
  c.closed = true;
  for (int i = 0; i < segments; ++i) {
    const double th = 2.0 * kPi * double(i) / double(segments);
    const double r = 1.0 + amp * std::cos(k * th);
    c.points.push_back(make_vec3(r * std::cos(th), r * std::sin(th), 0.0));
  }
  return c;
}

DiscreteCurve make_perturbed_circle(int segments, double amp, unsigned seed) {
  DeterministicRng rng(seed);
  double ar[3], ph[3], br[3], ps[3];
  for (int k = 0; k < 3; ++k) {
    ar[k] = amp * rng.uniform(0.3, 1.0);
    ph[k] = rng.uniform(0.0, 2.0 * kPi);
    br[k] = amp * rng.uniform(0.3, 1.0);
    ps[k] = rng.uniform(0.0, 2.0 * kPi);
  }
  DiscreteCurve c;
  c.closed = true;
  for (int i = 0; i < segments; ++i) {
    const double th = 2.0 * kPi * double(i) / double(segments);
    double r = 1.0, z = 0.0;
    for (int k = 0; k < 3; ++k) {
      r += ar[k] * std::cos((k + 1) * th + ph[k]);
      z += br[k] * std::sin((k + 1) * th + ps[k]);
    }
    c.points.push_back(make_vec3(r * std::cos(th), r * std::sin(th), z));
  }
  return c;
}

namespace {

struct IcoBuilder {
  std::vector<Vec> verts; // unit sphere positions, 3D
  std::vector<std::array<int, 3>> faces;
  std::map<std::pair<int, int>, int> midpoint_cache;

  int midpoint(int a, int b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoint_cache.find(key);
    if (it != midpoint_cache.end()) return it->second;
    Vec m = 0.5 * (verts[a] + verts[b]);
    m.normalize();
    verts.push_back(m);
    const int idx = int(verts.size()) - 1;
    midpoint_cache.emplace(key, idx);
    return idx;
  }

  void subdivide() {
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
};

IcoBuilder unit_icosphere(int level) {
  IcoBuilder b;
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (const auto& v : raw) {
    Vec p = make_vec3(v[0], v[1], v[2]);
    p.normalize();
    b.verts.push_back(p);
  }
  const int raw_faces[20][3] = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (const auto& f : raw_faces) {
    std::array<int, 3> face{f[0], f[1], f[2]};
    // enforce outward winding (star-shaped around the origin)
    const Vec u = b.verts[face[1]] - b.verts[face[0]];
    const Vec w = b.verts[face[2]] - b.verts[face[0]];
    if (det3(u, w, b.verts[face[0]]) < 0.0) std::swap(face[1], face[2]);
    b.faces.push_back(face);
  }
  for (int l = 0; l < level; ++l) b.subdivide();
  return b;
}

TriangleMesh embed_scaled(const IcoBuilder& b, double sx, double sy, double sz, int ambient_dim) {
  if (ambient_dim != 3 && ambient_dim != 4)
    throw ValidationError("fixtures: sphere meshes support ambient dim 3 or 4");
  TriangleMesh mesh;
  mesh.vertices.reserve(b.verts.size());
  for (const Vec& p : b.verts) {
    Vec q = zero_vec(ambient_dim);
    q[0] = sx * p[0];
    q[1] = sy * p[1];
    q[2] = sz * p[2];
    mesh.vertices.push_back(q);
  }
  mesh.triangles = b.faces;
  return mesh;
}

} // namespace

TriangleMesh make_icosphere(int level, double radius, int ambient_dim) {
  if (level < 0 || level > 8) throw ValidationError("fixtures: icosphere level out of range");
  return embed_scaled(unit_icosphere(level), radius, radius, radius, ambient_dim);
}

TriangleMesh make_ellipsoid(int level, double a, double b, double c, int ambient_dim) {
  if (level < 0 || level > 8) throw ValidationError("fixtures: icosphere level out of range");
  return embed_scaled(unit_icosphere(level), a, b, c, ambient_dim);
}

TriangleMesh make_flat_patch4d(int points_per_side, double half_extent) {
  if (points_per_side < 3) throw ValidationError("fixtures: patch needs >= 3 points per side");
  TriangleMesh mesh;
  const int m = points_per_side;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      const double x = -half_extent + 2.0 * half_extent * double(ix) / double(m - 1);
      const double y = -half_extent + 2.0 * half_extent * double(iy) / double(m - 1);
      mesh.vertices.push_back(make_vec4(x, y, 0.0, 0.0));
    }
  auto idx = [m](int ix, int iy) { return iy * m + ix; };
  for (int iy = 0; iy + 1 < m; ++iy)
    for (int ix = 0; ix + 1 < m; ++ix) {
      mesh.triangles.push_back({idx(ix, iy), idx(ix + 1, iy), idx(ix + 1, iy + 1)});
      mesh.triangles.push_back({idx(ix, iy), idx(ix + 1, iy + 1), idx(ix, iy + 1)});
    }
  return mesh;
}

VortexSheet make_torus_band_sheet(int nu, int nv, double major, double minor) {
  if (nu < 8 || nv < 8) throw ValidationError("fixtures: torus needs nu, nv >= 8");
  TriangleMesh mesh;
  std::vector<double> theta(nu * nv);
  for (int iu = 0; iu < nu; ++iu)
    for (int iv = 0; iv < nv; ++iv) {
      const double u = 2.0 * kPi * double(iu) / double(nu);
      const double v = 2.0 * kPi * double(iv) / double(nv);
      const double rad = major + minor * std::cos(v);
      mesh.vertices.push_back(make_vec3(rad * std::cos(u), rad * std::sin(u), minor * std::sin(v)));
      theta[iu * nv + iv] = u;
    }
  auto idx = [nu, nv](int iu, int iv) { return ((iu % nu + nu) % nu) * nv + ((iv % nv + nv) % nv); };
  for (int iu = 0; iu < nu; ++iu)
    for (int iv = 0; iv < nv; ++iv) {
      mesh.triangles.push_back({idx(iu, iv), idx(iu + 1, iv), idx(iu + 1, iv + 1)});
      mesh.triangles.push_back({idx(iu, iv), idx(iu + 1, iv + 1), idx(iu, iv + 1)});
    }
  // orient outward: positive enclosed volume by the divergence theorem
  double vol6 = 0.0;
  for (const auto& tri : mesh.triangles)
    vol6 += det3(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
  if (vol6 < 0.0) mesh.flip_orientation();

  std::map<std::pair<int, int>, double> alpha;
  auto wrap_angle = [](double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
  };
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      alpha[key] = wrap_angle(theta[key.second] - theta[key.first]) / (2.0 * kPi);
    }
  return VortexSheet::from_cochain(std::move(mesh), std::move(alpha));
}

VortexSheet make_sphere_band_sheet(int level, double width) {
  if (width <= 0.0 || width >= 1.0)
    throw ValidationError("fixtures: band width must be in (0, 1)");
  TriangleMesh mesh = make_icosphere(level, 1.0, 3);
  std::vector<double> f(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const double z = mesh.vertices[v][2];
    if (z <= -width) {
      f[v] = 0.0;
    } else if (z >= width) {
      f[v] = 1.0;
    } else {
      const double s = (z + width) / (2.0 * width);
      f[v] = s * s * (3.0 - 2.0 * s); // smoothstep ramp, total transverse integral 1
    }
  }
  return VortexSheet::from_potential(std::move(mesh), std::move(f));
}

SheetFibration make_cylinder_fibration(int fibers, int segments, double df) {
  if (fibers < 1) throw ValidationError("fixtures: fibration needs >= 1 fiber");
  SheetFibration fib;
  fib.df = df;
  for (int k = 0; k < fibers; ++k) {
    DiscreteCurve c = make_circle3d(segments, 1.0);
    for (Vec& p : c.points) p[2] = df * double(k);
    fib.fibers.push_back(std::move(c));
  }
  return fib;
}

VortexConfig2D make_random_vortices(int count, unsigned seed) {
  if (count < 1) throw ValidationError("fixtures: need at least one vortex");
  DeterministicRng rng(seed);
  VortexConfig2D cfg;
  int guard = 0;
  while (int(cfg.positions.size()) < count) {
    if (++guard > 100000)
      throw NumericalError("fixtures.random_vortices: separation constraint unsatisfiable");
    const Vec z = make_vec2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    bool ok = true;
    for (const Vec& p : cfg.positions)
      if ((p - z).norm() < 0.25) ok = false;
    if (!ok) continue;
    cfg.positions.push_back(z);
    const double mag = rng.uniform(0.5, 1.5);
    cfg.strengths.push_back(rng.next_double() < 0.5 ? mag : -mag);
  }
  return cfg;
}

} // namespace vortex
