#pragma once

#include "vortex/curve.hpp"
#include "vortex/mesh.hpp"
#include "vortex/pointvortex.hpp"
#include "vortex/symplectic.hpp"

#include <iosfwd>
#include <string>

namespace vortex {

// Plain-text geometry container:
//   dim n
//   v x1 ... xn            vertex (n coordinates)
//   t i j k                triangle, 0-based indices
//   strength C             membrane/filament strength
//   c i1 i2 ... im closed  curve over the vertex list ("closed" or "open")
//   f value                sheet potential, one line per vertex in order
//   a i j value            sheet 1-form value on the oriented edge i->j
//   df value               fiber spacing for curve families
//   pv x y kappa           point vortex
// Unknown tags and malformed lines are rejected with their line number.
struct GeometryFile {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> triangles;
  double strength = 1.0;
  bool has_strength = false;
  std::vector<std::pair<std::vector<int>, bool>> curves; // (indices, closed)
  std::vector<double> potentials;                        // sequential per vertex
  std::vector<std::tuple<int, int, double>> cochain;     // (i, j, value on i->j)
  double df = 0.0;
  bool has_df = false;
  std::vector<std::pair<Vec, double>> vortices; // (position, kappa)

  TriangleMesh to_mesh(bool require_closed) const;
  DiscreteCurve to_curve() const;       // expects exactly one c line
  VortexSheet to_sheet() const;         // mesh + (f lines or a lines)
  SheetFibration to_fibration() const;  // >= 1 c lines + df
  VortexConfig2D to_vortex_config() const;
};

GeometryFile parse_geometry(std::istream& in, const std::string& source_name);
GeometryFile load_geometry(const std::string& path);

void save_mesh(std::ostream& out, const TriangleMesh& mesh);
void save_curve(std::ostream& out, const DiscreteCurve& curve);
void save_sheet(std::ostream& out, const VortexSheet& sheet);
void save_fibration(std::ostream& out, const SheetFibration& fib);
void save_vortices(std::ostream& out, const VortexConfig2D& cfg);

void write_file(const std::string& path, const std::string& contents);
std::string format_double(double x); // shortest round-trip decimal

} // namespace vortex
