#include "vortex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vortex {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw ValidationError("io.parse: " + source + ":" + std::to_string(line) + ": " + what);
}

} // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

GeometryFile parse_geometry(std::istream& in, const std::string& source) {
  GeometryFile g;
  std::string line;
  int lineno = 0;
  bool saw_dim = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;

    auto expect_done = [&]() {
      std::string extra;
      if (ls >> extra) fail(source, lineno, "trailing token '" + extra + "'");
    };

    if (tag == "dim") {
      if (saw_dim) fail(source, lineno, "duplicate dim line");
      if (!(ls >> g.dim) || g.dim < 2 || g.dim > kMaxDim) fail(source, lineno, "bad dimension");
      saw_dim = true;
      expect_done();
    } else if (tag == "v") {
      if (!saw_dim) fail(source, lineno, "v before dim");
      Vec p = zero_vec(g.dim);
      for (int k = 0; k < g.dim; ++k)
        if (!(ls >> p[k])) fail(source, lineno, "vertex needs " + std::to_string(g.dim) + " coordinates");
      g.vertices.push_back(p);
      expect_done();
    } else if (tag == "t") {
      std::array<int, 3> tri{};
      if (!(ls >> tri[0] >> tri[1] >> tri[2])) fail(source, lineno, "triangle needs 3 indices");
      g.triangles.push_back(tri);
      expect_done();
    } else if (tag == "strength") {
      if (!(ls >> g.strength)) fail(source, lineno, "bad strength value");
      g.has_strength = true;
      expect_done();
    } else if (tag == "c") {
      std::vector<int> idx;
      std::string tok;
      bool closed = false, flagged = false;
      while (ls >> tok) {
        if (tok == "closed") {
          closed = true;
          flagged = true;
          break;
        }
        if (tok == "open") {
          closed = false;
          flagged = true;
          break;
        }
        try {
          size_t used = 0;
          const int v = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          idx.push_back(v);
        } catch (const std::exception&) {
          fail(source, lineno, "bad curve token '" + tok + "'");
        }
      }
      if (!flagged) fail(source, lineno, "curve line must end with 'closed' or 'open'");
      if (idx.size() < 4) fail(source, lineno, "curve needs at least 4 vertices");
      g.curves.emplace_back(std::move(idx), closed);
      expect_done();
    } else if (tag == "f") {
      double val;
      if (!(ls >> val)) fail(source, lineno, "bad potential value");
      g.potentials.push_back(val);
      expect_done();
    } else if (tag == "a") {
      int i, j;
      double val;
      if (!(ls >> i >> j >> val)) fail(source, lineno, "a line needs: i j value");
      g.cochain.emplace_back(i, j, val);
      expect_done();
    } else if (tag == "df") {
      if (!(ls >> g.df)) fail(source, lineno, "bad df value");
      g.has_df = true;
      expect_done();
    } else if (tag == "pv") {
      double x, y, kappa;
      if (!(ls >> x >> y >> kappa)) fail(source, lineno, "pv line needs: x y kappa");
      g.vortices.emplace_back(make_vec2(x, y), kappa);
      expect_done();
    } else {
      fail(source, lineno, "unknown tag '" + tag + "'");
    }
  }
  return g;
}

GeometryFile load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("io.load: cannot open " + path);
  return parse_geometry(in, path);
}

TriangleMesh GeometryFile::to_mesh(bool require_closed) const {
  if (triangles.empty()) throw ValidationError("io: file holds no triangles");
  TriangleMesh mesh;
  mesh.vertices = vertices;
  mesh.triangles = triangles;
  mesh.strength = strength;
  mesh.validate(require_closed);
  return mesh;
}

DiscreteCurve GeometryFile::to_curve() const {
  if (curves.size() != 1)
    throw ValidationError("io: expected exactly one curve line, found " +
                          std::to_string(curves.size()));
  DiscreteCurve c;
  c.closed = curves[0].second;
  for (int idx : curves[0].first) {
    if (idx < 0 || idx >= int(vertices.size()))
      throw ValidationError("io: curve index " + std::to_string(idx) + " out of range");
    c.points.push_back(vertices[idx]);
  }
  c.validate();
  return c;
}

VortexSheet GeometryFile::to_sheet() const {
  TriangleMesh mesh = to_mesh(/*require_closed=*/true);
  if (!potentials.empty() && !cochain.empty())
    throw ValidationError("io: sheet file mixes f and a lines");
  if (!potentials.empty()) {
    if (potentials.size() != vertices.size())
      throw ValidationError("io: sheet has " + std::to_string(potentials.size()) +
                            " f lines for " + std::to_string(vertices.size()) + " vertices");
    return VortexSheet::from_potential(std::move(mesh), potentials);
  }
  if (cochain.empty()) throw ValidationError("io: sheet file needs f or a lines");
  std::map<std::pair<int, int>, double> alpha;
  for (const auto& [i, j, val] : cochain) {
    if (i < 0 || j < 0 || i >= int(vertices.size()) || j >= int(vertices.size()) || i == j)
      throw ValidationError("io: bad edge in a line");
    const auto key = std::make_pair(std::min(i, j), std::max(i, j));
    const double oriented = i < j ? val : -val;
    if (alpha.count(key) && alpha[key] != oriented)
      throw ValidationError("io: conflicting a values on edge");
    alpha[key] = oriented;
  }
  return VortexSheet::from_cochain(std::move(mesh), std::move(alpha));
}

SheetFibration GeometryFile::to_fibration() const {
  if (curves.empty()) throw ValidationError("io: fibration needs c lines");
  if (!has_df) throw ValidationError("io: fibration needs a df line");
  SheetFibration fib;
  fib.df = df;
  for (const auto& [idx, closed] : curves) {
    DiscreteCurve c;
    c.closed = closed;
    for (int v : idx) {
      if (v < 0 || v >= int(vertices.size()))
        throw ValidationError("io: curve index " + std::to_string(v) + " out of range");
      c.points.push_back(vertices[v]);
    }
    fib.fibers.push_back(std::move(c));
  }
  fib.validate();
  return fib;
}

VortexConfig2D GeometryFile::to_vortex_config() const {
  if (vortices.empty()) throw ValidationError("io: no pv lines in file");
  VortexConfig2D cfg;
  for (const auto& [z, kappa] : vortices) {
    cfg.positions.push_back(z);
    cfg.strengths.push_back(kappa);
  }
  cfg.validate();
  return cfg;
}

namespace {

void write_vertices(std::ostream& out, const std::vector<Vec>& vertices, int dim) {
  out << "dim " << dim << "\n";
  for (const Vec& v : vertices) {
    out << "v";
    for (int k = 0; k < dim; ++k) out << " " << format_double(v[k]);
    out << "\n";
  }
}

} // namespace

void save_mesh(std::ostream& out, const TriangleMesh& mesh) {
  write_vertices(out, mesh.vertices, mesh.dim());
  for (const auto& tri : mesh.triangles) out << "t " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  out << "strength " << format_double(mesh.strength) << "\n";
}

void save_curve(std::ostream& out, const DiscreteCurve& curve) {
  write_vertices(out, curve.points, curve.dim());
  out << "c";
  for (int i = 0; i < curve.size(); ++i) out << " " << i;
  out << (curve.closed ? " closed" : " open") << "\n";
}

void save_sheet(std::ostream& out, const VortexSheet& sheet) {
  save_mesh(out, sheet.mesh);
  if (sheet.potential) {
    for (double f : *sheet.potential) out << "f " << format_double(f) << "\n";
  } else {
    for (const auto& [edge, value] : sheet.alpha)
      out << "a " << edge.first << " " << edge.second << " " << format_double(value) << "\n";
  }
}

void save_fibration(std::ostream& out, const SheetFibration& fib) {
  const int dim = fib.fibers.at(0).dim();
  out << "dim " << dim << "\n";
  int base = 0;
  std::ostringstream curves;
  for (const DiscreteCurve& fiber : fib.fibers) {
    for (const Vec& p : fiber.points) {
      out << "v";
      for (int k = 0; k < dim; ++k) out << " " << format_double(p[k]);
      out << "\n";
    }
    curves << "c";
    for (int i = 0; i < fiber.size(); ++i) curves << " " << (base + i);
    curves << (fiber.closed ? " closed" : " open") << "\n";
    base += fiber.size();
  }
  out << curves.str();
  out << "df " << format_double(fib.df) << "\n";
}

void save_vortices(std::ostream& out, const VortexConfig2D& cfg) {
  for (int j = 0; j < cfg.count(); ++j)
    out << "pv " << format_double(cfg.positions[j][0]) << " " << format_double(cfg.positions[j][1])
        << " " << format_double(cfg.strengths[j]) << "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("io.write: cannot open " + path);
  out << contents;
}

} // namespace vortex
