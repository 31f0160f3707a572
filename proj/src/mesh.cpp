#include "vortex/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace vortex {

namespace {

double area_from_edges(const Vec& u, const Vec& w) {
  const double gram = u.squaredNorm() * w.squaredNorm() - u.dot(w) * u.dot(w);
  return 0.5 * std::sqrt(std::max(0.0, gram));
}

} // namespace

double TriangleMesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  return area_from_edges(vertices[tri[1]] - vertices[tri[0]], vertices[tri[2]] - vertices[tri[0]]);
}

Vec TriangleMesh::triangle_centroid(int t) const {
  const auto& tri = triangles[t];
  return (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
}

double TriangleMesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < triangle_count(); ++t) a += triangle_area(t);
  return a;
}

Vec TriangleMesh::centroid() const {
  Vec c = zero_vec(dim());
  double a = 0.0;
  for (int t = 0; t < triangle_count(); ++t) {
    const double at = triangle_area(t);
    c += at * triangle_centroid(t);
    a += at;
  }
  return c / a;
}

void TriangleMesh::validate(bool require_closed) const {
  const int n = dim();
  if (n < 3) throw ValidationError("geometry.mesh: ambient dimension must be >= 3");
  for (const Vec& v : vertices)
    if (int(v.size()) != n) throw ValidationError("geometry.mesh: inconsistent vertex dimensions");
  if (triangles.empty()) throw ValidationError("geometry.mesh: no triangles");

  for (int t = 0; t < triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = triangles[t][k];
      if (v < 0 || v >= vertex_count())
        throw ValidationError("geometry.mesh: triangle " + std::to_string(t) +
                              " references vertex " + std::to_string(v));
    }
    if (triangle_area(t) <= 0.0)
      throw ValidationError("geometry.mesh: zero-area triangle " + std::to_string(t));
  }

  // Directed-edge census: each directed edge at most once, and a shared
  // undirected edge must appear once in each direction (opposite windings).
  std::map<std::pair<int, int>, int> directed;
  for (int t = 0; t < triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles[t][k], b = triangles[t][(k + 1) % 3];
      if (a == b) throw ValidationError("geometry.mesh: degenerate triangle " + std::to_string(t));
      if (!directed.emplace(std::make_pair(a, b), t).second)
        throw ValidationError("geometry.mesh: inconsistent orientation, duplicated directed edge " +
                              std::to_string(a) + "->" + std::to_string(b));
    }
  }
  if (require_closed) {
    for (const auto& [edge, t] : directed)
      if (!directed.count({edge.second, edge.first}))
        throw ValidationError("geometry.mesh: not closed, boundary edge " +
                              std::to_string(edge.first) + "-" + std::to_string(edge.second));
  }

  // Connectivity over triangle adjacency through shared vertices.
  std::vector<std::vector<int>> fans = vertex_fans();
  std::vector<char> seen(triangle_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int k = 0; k < 3; ++k)
      for (int other : fans[triangles[t][k]])
        if (!seen[other]) {
          seen[other] = 1;
          ++reached;
          stack.push_back(other);
        }
  }
  if (reached != triangle_count())
    throw ValidationError("geometry.mesh: not connected (" + std::to_string(reached) + " of " +
                          std::to_string(triangle_count()) + " triangles reachable)");
}

bool TriangleMesh::is_closed() const {
  std::map<std::pair<int, int>, int> count;
  for (const auto& tri : triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      count[{std::min(a, b), std::max(a, b)}]++;
    }
  for (const auto& [e, c] : count)
    if (c != 2) return false;
  return true;
}

std::vector<std::vector<int>> TriangleMesh::vertex_fans() const {
  std::vector<std::vector<int>> fans(vertex_count());
  for (int t = 0; t < triangle_count(); ++t)
    for (int k = 0; k < 3; ++k) fans[triangles[t][k]].push_back(t);
  return fans;
}

std::vector<bool> TriangleMesh::boundary_vertices() const {
  std::map<std::pair<int, int>, int> count;
  for (const auto& tri : triangles)
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3];
      count[{std::min(a, b), std::max(a, b)}]++;
    }
  std::vector<bool> boundary(vertex_count(), false);
  for (const auto& [e, c] : count)
    if (c == 1) boundary[e.first] = boundary[e.second] = true;
  return boundary;
}

void TriangleMesh::flip_orientation() {
  for (auto& tri : triangles) std::swap(tri[1], tri[2]);
}

double triangle_aspect_ratio(const TriangleMesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const double e0 = (mesh.vertices[tri[1]] - mesh.vertices[tri[0]]).norm();
  const double e1 = (mesh.vertices[tri[2]] - mesh.vertices[tri[1]]).norm();
  const double e2 = (mesh.vertices[tri[0]] - mesh.vertices[tri[2]]).norm();
  const double longest = std::max({e0, e1, e2});
  const double area = mesh.triangle_area(t);
  if (area <= 0.0) return 1e300;
  return longest * longest / (2.0 * area);
}

} // namespace vortex
