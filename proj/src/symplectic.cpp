#include "vortex/symplectic.hpp"

#include "vortex/parallel.hpp"

#include "vortex/mesh_geometry.hpp"

#include <cmath>
#include <string>

namespace vortex {

double kk_form_points(const VortexConfig2D& cfg, const std::vector<Vec>& v,
                      const std::vector<Vec>& w) {
  if (int(v.size()) != cfg.count() || int(w.size()) != cfg.count())
    throw ValidationError("symplectic.kk_form_points: field length mismatch");
  double sum = 0.0;
  for (int j = 0; j < cfg.count(); ++j) sum += cfg.strengths[j] * det2(v[j], w[j]);
  return sum;
}

double mw_form_curve(const DiscreteCurve& curve, const std::vector<Vec>& v,
                     const std::vector<Vec>& w) {
  if (curve.dim() != 3)
    throw ValidationError("symplectic.mw_form_curve: requires ambient dimension 3");
  if (int(v.size()) != curve.size() || int(w.size()) != curve.size())
    throw ValidationError("symplectic.mw_form_curve: field length mismatch");
  const int edges = curve.closed ? curve.size() : curve.size() - 1;
  double sum = 0.0;
  for (int i = 0; i < edges; ++i) {
    const int j = curve.wrap(i + 1);
    const Vec vm = 0.5 * (v[i] + v[j]);
    const Vec wm = 0.5 * (w[i] + w[j]);
    sum += det3(vm, wm, Vec(curve.points[j] - curve.points[i]));
  }
  return sum;
}

double mw_form_membrane(const TriangleMesh& mesh, const std::vector<Vec>& v,
                        const std::vector<Vec>& w, double* projection_residual) {
  if (mesh.dim() != 4)
    throw ValidationError("symplectic.mw_form_membrane: requires ambient dimension 4");
  if (int(v.size()) != mesh.vertex_count() || int(w.size()) != mesh.vertex_count())
    throw ValidationError("symplectic.mw_form_membrane: field length mismatch");

  const std::vector<NormalFrame> frames = vertex_frames_all(mesh);
  std::vector<Vec> vn(v.size()), wn(w.size());
  double max_resid = 0.0;
  for (int i = 0; i < mesh.vertex_count(); ++i) {
    const NormalFrame& fr = frames[i];
    vn[i] = fr.e1.dot(v[i]) * fr.e1 + fr.e2.dot(v[i]) * fr.e2;
    wn[i] = fr.e1.dot(w[i]) * fr.e1 + fr.e2.dot(w[i]) * fr.e2;
    max_resid = std::max({max_resid, (v[i] - vn[i]).norm(), (w[i] - wn[i]).norm()});
  }
  if (projection_residual) *projection_residual = max_resid;

  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec vm = (vn[tri[0]] + vn[tri[1]] + vn[tri[2]]) / 3.0;
    const Vec wm = (wn[tri[0]] + wn[tri[1]] + wn[tri[2]]) / 3.0;
    const Vec u = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Vec e = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    sum += 0.5 * det4(vm, wm, u, e);
  }
  return sum;
}

double VortexSheet::alpha_on(int from, int to) const {
  const auto key = std::make_pair(std::min(from, to), std::max(from, to));
  const auto it = alpha.find(key);
  if (it == alpha.end())
    throw ValidationError("symplectic.sheet: no alpha value on edge " + std::to_string(from) +
                          "-" + std::to_string(to));
  return from < to ? it->second : -it->second;
}

void VortexSheet::validate() const {
  if (mesh.dim() != 3)
    throw ValidationError("symplectic.sheet: vortex sheets live in R^3");
  mesh.validate(/*require_closed=*/true);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double circ =
        alpha_on(tri[0], tri[1]) + alpha_on(tri[1], tri[2]) + alpha_on(tri[2], tri[0]);
    if (std::abs(circ) > 1e-12)
      throw ValidationError("symplectic.sheet: alpha not closed on triangle " + std::to_string(t) +
                            " (circulation " + std::to_string(circ) + ")");
  }
  if (potential) {
    if (int(potential->size()) != mesh.vertex_count())
      throw ValidationError("symplectic.sheet: potential length mismatch");
    for (const auto& [edge, value] : alpha) {
      const double expected = (*potential)[edge.second] - (*potential)[edge.first];
      if (value != expected)
        throw ValidationError("symplectic.sheet: potential inconsistent with alpha on edge " +
                              std::to_string(edge.first) + "-" + std::to_string(edge.second));
    }
  }
}

VortexSheet VortexSheet::from_potential(TriangleMesh mesh, std::vector<double> f) {
  VortexSheet sheet;
  sheet.mesh = std::move(mesh);
  if (int(f.size()) != sheet.mesh.vertex_count())
    throw ValidationError("symplectic.sheet: potential length mismatch");
  for (const auto& tri : sheet.mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      sheet.alpha[key] = f[key.second] - f[key.first];
    }
  sheet.potential = std::move(f);
  sheet.validate();
  return sheet;
}

VortexSheet VortexSheet::from_cochain(TriangleMesh mesh,
                                      std::map<std::pair<int, int>, double> alpha) {
  VortexSheet sheet;
  sheet.mesh = std::move(mesh);
  sheet.alpha = std::move(alpha);
  sheet.validate();
  return sheet;
}

double sheet_pairing(const VortexSheet& sheet, const std::vector<Vec>& v_at_centroids) {
  if (!sheet.potential)
    throw ValidationError(
        "symplectic.sheet_pairing: non-exact alpha: pairing requires the bounded-domain "
        "primitive, not implemented");
  if (int(v_at_centroids.size()) != sheet.mesh.triangle_count())
    throw ValidationError("symplectic.sheet_pairing: field length mismatch");
  const std::vector<double>& f = *sheet.potential;
  double sum = 0.0;
  for (int t = 0; t < sheet.mesh.triangle_count(); ++t) {
    const auto& tri = sheet.mesh.triangles[t];
    const Vec u = sheet.mesh.vertices[tri[1]] - sheet.mesh.vertices[tri[0]];
    const Vec w = sheet.mesh.vertices[tri[2]] - sheet.mesh.vertices[tri[0]];
    const Vec area_normal = 0.5 * cross3(u, w); // outward for the stored winding
    const double f_mid = (f[tri[0]] + f[tri[1]] + f[tri[2]]) / 3.0;
    sum += f_mid * area_normal.dot(v_at_centroids[t]);
  }
  return sum;
}

double sheet_form(const VortexSheet& sheet, const std::vector<Vec>& v,
                  const std::vector<Vec>& w) {
  const TriangleMesh& mesh = sheet.mesh;
  if (int(v.size()) != mesh.vertex_count() || int(w.size()) != mesh.vertex_count())
    throw ValidationError("symplectic.sheet_form: field length mismatch");
  double sum = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec vm = (v[tri[0]] + v[tri[1]] + v[tri[2]]) / 3.0;
    const Vec wm = (w[tri[0]] + w[tri[1]] + w[tri[2]]) / 3.0;
    const Vec u = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Vec e = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    // (alpha ^ beta)(u, e)/2 with beta(Z) = det[V, W, Z]; closedness of alpha
    // makes the base-vertex choice immaterial.
    const double beta_u = det3(vm, wm, u);
    const double beta_e = det3(vm, wm, e);
    sum += 0.5 * (sheet.alpha_on(tri[0], tri[1]) * beta_e - sheet.alpha_on(tri[0], tri[2]) * beta_u);
  }
  return sum;
}

void SheetFibration::validate() const {
  if (fibers.empty()) throw ValidationError("symplectic.sheet_family: no fibers");
  if (df <= 0.0) throw ValidationError("symplectic.sheet_family: df must be positive");
  const int m = fibers[0].size();
  for (const DiscreteCurve& fiber : fibers) {
    fiber.validate();
    if (!fiber.closed)
      throw ValidationError("symplectic.sheet_family: fibers must be closed");
    if (fiber.size() != m)
      throw ValidationError("symplectic.sheet_family: fibers must share a vertex count");
  }
}

double SheetFibration::family_hamiltonian() const {
  double h = 0.0;
  for (const DiscreteCurve& fiber : fibers) h += curve_length(fiber) * df;
  return h;
}

SheetFibration sheet_family_binormal_step(const SheetFibration& fib, double dt) {
  SheetFibration out = fib;
  const int nf = int(fib.fibers.size());
  parallel_indexed(nf, [&](int f) {
    out.fibers[f] = evolve_filament(fib.fibers[f], dt, dt > 0.0 ? 1 : 0).final;
  });
  return out;
}

} // namespace vortex
