#pragma once

#include "vortex/frame.hpp"
#include "vortex/mesh.hpp"

namespace vortex {

// Mixed-Voronoi vertex area (Voronoi area on non-obtuse triangles, T/2 or T/4
// splits on obtuse ones). fan = triangles incident to v.
double mixed_voronoi_area(const TriangleMesh& mesh, int v, const std::vector<int>& fan);

// Discrete mean curvature vector at vertex v: cotangent Laplacian of the
// coordinate functions over twice the mixed area, halved (trace of the second
// fundamental form divided by the surface dimension 2). Points toward the
// center for a sphere. Requires a full (closed) fan at v.
Vec mean_curvature(const TriangleMesh& mesh, int v);

// Batch evaluation over all vertices. Boundary vertices of open meshes get a
// zero vector. The parallel version is bit-identical to the serial one.
std::vector<Vec> mean_curvature_all(const TriangleMesh& mesh);
std::vector<Vec> mean_curvature_all_serial(const TriangleMesh& mesh);

// Oriented frame of the normal 2-plane at vertex v (ambient dimension must be
// surface dim + 2, i.e. 4). Tangent plane from the two leading principal
// directions of the area-weighted fan-edge covariance; orientation_sign makes
// (oriented tangent basis, e1, e2) positive in R^4.
NormalFrame vertex_normal_frame(const TriangleMesh& mesh, int v);

std::vector<NormalFrame> vertex_frames_all(const TriangleMesh& mesh);
std::vector<NormalFrame> vertex_frames_all_serial(const TriangleMesh& mesh);

// Frame of the normal plane of one flat triangle, oriented by its winding.
NormalFrame triangle_normal_frame(const TriangleMesh& mesh, int t);

} // namespace vortex
