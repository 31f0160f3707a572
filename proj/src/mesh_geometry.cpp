#include "vortex/mesh_geometry.hpp"

#include "vortex/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace vortex {

namespace {

// Rotate triangle t so its first vertex is v.
std::array<int, 3> rotate_to(const TriangleMesh& mesh, int t, int v) {
  std::array<int, 3> tri = mesh.triangles[t];
  while (tri[0] != v) {
    std::array<int, 3> r{tri[1], tri[2], tri[0]};
    tri = r;
  }
  return tri;
}

double cotangent(const Vec& u, const Vec& w) {
  const double cos_part = u.dot(w);
  const double gram = u.squaredNorm() * w.squaredNorm() - cos_part * cos_part;
  const double sin_part = std::sqrt(std::max(0.0, gram));
  if (sin_part <= 1e-300) return 0.0;
  return cos_part / sin_part;
}

bool fan_is_closed(const TriangleMesh& mesh, int v, const std::vector<int>& fan,
                   const std::vector<bool>& boundary) {
  (void)mesh;
  (void)fan;
  return !boundary[v];
}

Vec mean_curvature_impl(const TriangleMesh& mesh, int v, const std::vector<int>& fan) {
  const int n = mesh.dim();
  Vec lap = zero_vec(n);
  for (int t : fan) {
    const auto tri = rotate_to(mesh, t, v);
    const Vec& pi = mesh.vertices[tri[0]];
    const Vec& pj = mesh.vertices[tri[1]];
    const Vec& pk = mesh.vertices[tri[2]];
    // angle at k is opposite edge (i,j); angle at j is opposite edge (i,k)
    const double cot_k = cotangent(pi - pk, pj - pk);
    const double cot_j = cotangent(pi - pj, pk - pj);
    lap += cot_k * (pj - pi) + cot_j * (pk - pi);
  }
  const double area = mixed_voronoi_area(mesh, v, fan);
  return lap / (2.0 * area) / 2.0;
}

NormalFrame vertex_frame_impl(const TriangleMesh& mesh, int v, const std::vector<int>& fan) {
  const int n = mesh.dim();
  if (n != 4)
    throw ValidationError(
        "geometry.membrane_normal_frame: normal plane requires codimension 2 (ambient dim 4)");
  if (fan.empty())
    throw ValidationError("geometry.membrane_normal_frame: isolated vertex " + std::to_string(v));

  MatN cov = MatN::Zero(n, n);
  for (int t : fan) {
    const auto tri = rotate_to(mesh, t, v);
    const Vec u = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Vec w = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    const double a = mesh.triangle_area(t);
    cov += a * (u * u.transpose() + w * w.transpose());
  }
  Eigen::SelfAdjointEigenSolver<MatN> eig(cov);
  const auto& vals = eig.eigenvalues(); // ascending
  if (vals[n - 2] <= 1e-12 * vals[n - 1])
    throw ValidationError("geometry.membrane_normal_frame: degenerate tangent estimate at vertex " +
                          std::to_string(v));
  Vec t1 = eig.eigenvectors().col(n - 1);
  Vec t2 = eig.eigenvectors().col(n - 2);

  // Match the tangent pair to the winding orientation of the fan.
  double winding = 0.0;
  for (int t : fan) {
    const auto tri = rotate_to(mesh, t, v);
    const Vec u = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
    const Vec w = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
    winding += u.dot(t1) * w.dot(t2) - u.dot(t2) * w.dot(t1);
  }
  if (winding < 0.0) std::swap(t1, t2);

  const std::vector<Vec> comp = orthonormal_complement({t1, t2}, n);
  NormalFrame frame;
  frame.e1 = comp[0];
  frame.e2 = comp[1];
  frame.orientation_sign = det4(t1, t2, frame.e1, frame.e2) > 0 ? 1.0 : -1.0;
  return frame;
}

} // namespace

double mixed_voronoi_area(const TriangleMesh& mesh, int v, const std::vector<int>& fan) {
  double area = 0.0;
  for (int t : fan) {
    const auto tri = rotate_to(mesh, t, v);
    const Vec& pi = mesh.vertices[tri[0]];
    const Vec& pj = mesh.vertices[tri[1]];
    const Vec& pk = mesh.vertices[tri[2]];
    const double cos_i = (pj - pi).dot(pk - pi);
    const double cos_j = (pi - pj).dot(pk - pj);
    const double cos_k = (pi - pk).dot(pj - pk);
    const double tri_area = mesh.triangle_area(t);
    if (cos_i >= 0.0 && cos_j >= 0.0 && cos_k >= 0.0) {
      const double cot_j = cotangent(pi - pj, pk - pj);
      const double cot_k = cotangent(pi - pk, pj - pk);
      area += ((pj - pi).squaredNorm() * cot_k + (pk - pi).squaredNorm() * cot_j) / 8.0;
    } else if (cos_i < 0.0) {
      area += tri_area / 2.0;
    } else {
      area += tri_area / 4.0;
    }
  }
  if (!(area > 1e-250))
    throw ValidationError("geometry.membrane_mean_curvature: degenerate vertex area at vertex " +
                          std::to_string(v));
  return area;
}

Vec mean_curvature(const TriangleMesh& mesh, int v) {
  const auto fans = mesh.vertex_fans();
  const auto boundary = mesh.boundary_vertices();
  if (!fan_is_closed(mesh, v, fans[v], boundary))
    throw ValidationError("geometry.membrane_mean_curvature: vertex " + std::to_string(v) +
                          " has no full triangle fan");
  return mean_curvature_impl(mesh, v, fans[v]);
}

std::vector<Vec> mean_curvature_all_serial(const TriangleMesh& mesh) {
  const auto fans = mesh.vertex_fans();
  const auto boundary = mesh.boundary_vertices();
  std::vector<Vec> out(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    out[v] = boundary[v] ? zero_vec(mesh.dim()) : mean_curvature_impl(mesh, v, fans[v]);
  return out;
}

std::vector<Vec> mean_curvature_all(const TriangleMesh& mesh) {
  const auto fans = mesh.vertex_fans();
  const auto boundary = mesh.boundary_vertices();
  std::vector<Vec> out(mesh.vertex_count());
  const int nv = mesh.vertex_count();
  parallel_indexed(nv, [&](int v) {
    out[v] = boundary[v] ? zero_vec(mesh.dim()) : mean_curvature_impl(mesh, v, fans[v]);
  });
  return out;
}

NormalFrame vertex_normal_frame(const TriangleMesh& mesh, int v) {
  const auto fans = mesh.vertex_fans();
  return vertex_frame_impl(mesh, v, fans[v]);
}

std::vector<NormalFrame> vertex_frames_all_serial(const TriangleMesh& mesh) {
  const auto fans = mesh.vertex_fans();
  std::vector<NormalFrame> out(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) out[v] = vertex_frame_impl(mesh, v, fans[v]);
  return out;
}

std::vector<NormalFrame> vertex_frames_all(const TriangleMesh& mesh) {
  const auto fans = mesh.vertex_fans();
  std::vector<NormalFrame> out(mesh.vertex_count());
  const int nv = mesh.vertex_count();
  parallel_indexed(nv, [&](int v) { out[v] = vertex_frame_impl(mesh, v, fans[v]); });
  return out;
}

NormalFrame triangle_normal_frame(const TriangleMesh& mesh, int t) {
  const int n = mesh.dim();
  if (n != 4)
    throw ValidationError("geometry.triangle_normal_frame: requires ambient dim 4");
  const auto& tri = mesh.triangles[t];
  const Vec u = mesh.vertices[tri[1]] - mesh.vertices[tri[0]];
  const Vec w = mesh.vertices[tri[2]] - mesh.vertices[tri[0]];
  Vec t1 = u / u.norm();
  Vec t2 = w - w.dot(t1) * t1;
  const double nrm = t2.norm();
  if (nrm <= 1e-14 * u.norm())
    throw ValidationError("geometry.triangle_normal_frame: degenerate triangle " +
                          std::to_string(t));
  t2 /= nrm; // (t1, t2) spans the triangle with its winding orientation
  const std::vector<Vec> comp = orthonormal_complement({t1, t2}, n);
  NormalFrame frame;
  frame.e1 = comp[0];
  frame.e2 = comp[1];
  frame.orientation_sign = det4(t1, t2, frame.e1, frame.e2) > 0 ? 1.0 : -1.0;
  return frame;
}

} // namespace vortex
