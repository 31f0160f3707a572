#pragma once

#include "vortex/types.hpp"

#include <array>
#include <vector>

namespace vortex {

// Oriented triangle mesh embedded in R^n. Carries membranes (n = 4, the
// codimension-2 case) and vortex-sheet supports (n = 3). strength is the
// constant C of the singular vorticity carried by the surface.
struct TriangleMesh {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> triangles;
  double strength = 1.0;

  int dim() const { return vertices.empty() ? 0 : int(vertices[0].size()); }
  int vertex_count() const { return int(vertices.size()); }
  int triangle_count() const { return int(triangles.size()); }

  double triangle_area(int t) const;
  Vec triangle_centroid(int t) const;
  double total_area() const; // the (n-2)-volume of the membrane, sum of areas
  Vec centroid() const;      // area-weighted

  // Checks: consistent dims, valid indices, positive areas, each edge shared by
  // at most two triangles with opposite induced orientations, connected.
  // require_closed additionally rejects boundary edges.
  void validate(bool require_closed) const;
  bool is_closed() const;

  // Triangles incident to each vertex, in deterministic (triangle-index) order.
  std::vector<std::vector<int>> vertex_fans() const;

  std::vector<bool> boundary_vertices() const;

  void flip_orientation(); // reverse every winding
};

// max_edge / shortest altitude; ~1 for equilateral triangles.
double triangle_aspect_ratio(const TriangleMesh& mesh, int t);

} // namespace vortex
