// Command-line front end: fixture generation, simulation drivers, slope
// analyses, form evaluators, invariant and acceptance batteries.
//
// Exit codes: 0 success, 2 validation error (bad input or arguments),
// 3 numerical failure (stalled integrator, unusable fit, collision).

#include "vortex/acceptance.hpp"
#include "vortex/biotsavart.hpp"
#include "vortex/energy.hpp"
#include "vortex/filament.hpp"
#include "vortex/fixtures.hpp"
#include "vortex/io.hpp"
#include "vortex/membrane_flow.hpp"
#include "vortex/mesh_geometry.hpp"
#include "vortex/numerics.hpp"
#include "vortex/pointvortex.hpp"
#include "vortex/symplectic.hpp"
#include "vortex/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace vortex;
using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cli.run: cannot open output file " + path);
  return out;
}

void write_json_report(const std::string& path, json j) {
  j["version"] = kVersion;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

std::string diag_path_for(const std::string& out_path) {
  const auto dot = out_path.rfind('.');
  if (dot == std::string::npos) return out_path + ".diag.csv";
  return out_path.substr(0, dot) + ".diag.csv";
}

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (int k = 0; k < int(v.size()); ++k) arr.push_back(v[k]);
  return arr;
}

// Named analytic fields for the evaluate commands.
Vec named_field(const std::string& name, const Vec& p, int dim) {
  auto unit = [dim](int axis) {
    Vec v = zero_vec(dim);
    v[axis] = 1.0;
    return v;
  };
  if (name == "ex") return unit(0);
  if (name == "ey") return unit(1);
  if (name == "ez" && dim >= 3) return unit(2);
  if (name == "e4" && dim >= 4) return unit(3);
  if (name == "radial") {
    const double n = p.norm();
    return n > 0 ? Vec(p / n) : zero_vec(dim);
  }
  if (name == "azimuthal" && dim == 3) return cross3(unit(2), p);
  if (name.rfind("random:", 0) == 0) {
    unsigned seed = 0;
    try {
      seed = unsigned(std::stoul(name.substr(7)));
    } catch (const std::exception&) {
      throw ValidationError("cli.evaluate: bad seed in field '" + name + "'");
    }
    DeterministicRng rng(seed);
    // position-hashed deterministic direction
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (int k = 0; k < dim; ++k) {
      std::uint64_t bits;
      const double x = p[k];
      std::memcpy(&bits, &x, sizeof bits);
      h = (h ^ bits) * 0x100000001b3ull;
    }
    DeterministicRng local(h ^ rng.next_u64());
    Vec v = zero_vec(dim);
    for (int k = 0; k < dim; ++k) v[k] = local.uniform(-1.0, 1.0);
    return v;
  }
  throw ValidationError("cli.evaluate: unknown field '" + name + "' for dimension " +
                        std::to_string(dim));
}

std::vector<double> eps_from_flags(double h, double eps_min, double decades, int count) {
  const double lo = eps_min > 0 ? eps_min : 3.0 * h;
  std::vector<double> out;
  for (int k = 0; k < count; ++k)
    out.push_back(lo * std::pow(10.0, decades * double(k) / (count - 1)));
  return out;
}

// ---------------------------------------------------------------- fixtures
int cmd_fixture(const std::string& name, const std::string& out_path, double radius, int level,
                int ambient_dim, int points, double half_extent, int nu, int nv, double major,
                double minor, double band_width, int fibers, int segments, double df, int count,
                unsigned seed, double strength) {
  std::ostringstream body;
  if (name == "circle3d") {
    save_curve(body, make_circle3d(segments, radius));
  } else if (name == "icosphere4d") {
    TriangleMesh mesh = make_icosphere(level, radius, 4);
    mesh.strength = strength;
    save_mesh(body, mesh);
  } else if (name == "icosphere3d") {
    TriangleMesh mesh = make_icosphere(level, radius, 3);
    mesh.strength = strength;
    save_mesh(body, mesh);
  } else if (name == "ellipsoid4d") {
    TriangleMesh mesh = make_ellipsoid(level, radius, radius, 0.6 * radius, 4);
    mesh.strength = strength;
    save_mesh(body, mesh);
  } else if (name == "flatpatch4d") {
    TriangleMesh mesh = make_flat_patch4d(points, half_extent);
    mesh.strength = strength;
    save_mesh(body, mesh);
  } else if (name == "torus_band_sheet") {
    save_sheet(body, make_torus_band_sheet(nu, nv, major, minor));
  } else if (name == "sphere_band_sheet") {
    save_sheet(body, make_sphere_band_sheet(level, band_width));
  } else if (name == "cylinder_fibration") {
    save_fibration(body, make_cylinder_fibration(fibers, segments, df));
  } else if (name == "random_vortices") {
    save_vortices(body, make_random_vortices(count, seed));
  } else {
    throw ValidationError("cli.fixture: unknown fixture name '" + name + "'");
  }
  write_file(out_path, body.str());
  return 0;
}

// ---------------------------------------------------------------- simulate
int cmd_points2d(const std::string& input, double dt, int steps, const std::string& scheme,
                 const std::string& out_path, std::string diag_path) {
  const VortexConfig2D cfg = load_geometry(input).to_vortex_config();
  const Scheme2D sch = scheme == "implicit_midpoint" ? Scheme2D::ImplicitMidpoint : Scheme2D::Rk4;
  if (scheme != "rk4" && scheme != "implicit_midpoint")
    throw ValidationError("cli.simulate: unknown scheme '" + scheme + "'");
  if (diag_path.empty()) diag_path = diag_path_for(out_path);

  auto traj = open_out(out_path);
  auto diag = open_out(diag_path);
  traj << "# vortexkit " << kVersion << "\n" << "t,j,x,y\n";
  diag << "# vortexkit " << kVersion << "\n" << "t,H,Px,Py,I\n";

  VortexConfig2D state = cfg;
  for (int s = 0; s <= steps; ++s) {
    const double t = s * dt;
    for (int j = 0; j < state.count(); ++j)
      traj << format_double(t) << "," << j << "," << format_double(state.positions[j][0]) << ","
           << format_double(state.positions[j][1]) << "\n";
    const Impulses imp = impulses(state);
    diag << format_double(t) << "," << format_double(kirchhoff_hamiltonian(state)) << ","
         << format_double(imp.px) << "," << format_double(imp.py) << ","
         << format_double(imp.angular) << "\n";
    if (s < steps) state = step2d(state, dt, sch);
  }
  return 0;
}

int cmd_filament(const std::string& input, double dt, int steps, const std::string& out_path,
                 int resample_every, bool detect_self_intersection) {
  const DiscreteCurve curve = load_geometry(input).to_curve();
  FilamentEvolveOptions opts;
  opts.resample_every = resample_every;
  opts.detect_self_intersection = detect_self_intersection;

  auto out = open_out(out_path);
  out << json{{"version", kVersion}, {"kind", "filament3d"}}.dump() << "\n";

  // stream step records; evolve one step at a time to bound memory
  DiscreteCurve state = curve;
  auto emit = [&](int step, double t, double length, bool resampled, const DiscreteCurve& c) {
    json rec{{"step", step}, {"t", t}, {"length", length}};
    if (resampled) rec["resampled"] = true;
    json verts = json::array();
    for (const Vec& p : c.points) verts.push_back(vec_to_json(p));
    rec["vertices"] = verts;
    out << rec.dump() << "\n";
  };
  emit(0, 0.0, curve_length(state), false, state);
  for (int s = 1; s <= steps; ++s) {
    FilamentEvolveOptions step_opts = opts;
    step_opts.resample_every =
        (opts.resample_every > 0 && s % opts.resample_every == 0) ? 1 : 0;
    const FilamentTrajectory chunk = evolve_filament(state, dt, 1, step_opts);
    state = chunk.final;
    emit(s, s * dt, chunk.records.back().length, chunk.records.back().resampled, state);
  }
  return 0;
}

int cmd_membrane(const std::string& input, double dt, int steps, const std::string& out_path,
                 int dump_every) {
  const TriangleMesh mesh = load_geometry(input).to_mesh(/*require_closed=*/true);
  auto out = open_out(out_path);
  out << json{{"version", kVersion}, {"kind", "membrane"}}.dump() << "\n";

  TriangleMesh state = mesh;
  auto emit = [&](int step, double t, const TriangleMesh& m) {
    json rec{{"step", step}, {"t", t}, {"volume", m.total_area()},
             {"centroid", vec_to_json(m.centroid())}};
    if (dump_every > 0 && step % dump_every == 0) {
      json verts = json::array();
      for (const Vec& p : m.vertices) verts.push_back(vec_to_json(p));
      rec["vertices"] = verts;
    }
    out << rec.dump() << "\n";
  };
  emit(0, 0.0, state);
  for (int s = 1; s <= steps; ++s) {
    state = evolve_membrane(state, dt, 1).final;
    emit(s, s * dt, state);
  }
  return 0;
}

int cmd_sheet_family(const std::string& input, double dt, int steps, const std::string& out_path) {
  SheetFibration fib = load_geometry(input).to_fibration();
  auto out = open_out(out_path);
  out << json{{"version", kVersion}, {"kind", "sheet_family"}}.dump() << "\n";
  auto emit = [&](int step, double t) {
    json lengths = json::array();
    for (const DiscreteCurve& f : fib.fibers) lengths.push_back(curve_length(f));
    out << json{{"step", step},
                {"t", t},
                {"family_hamiltonian", fib.family_hamiltonian()},
                {"fiber_lengths", lengths}}
               .dump()
        << "\n";
  };
  emit(0, 0.0);
  for (int s = 1; s <= steps; ++s) {
    fib = sheet_family_binormal_step(fib, dt);
    emit(s, s * dt);
  }
  return 0;
}

// ----------------------------------------------------------------- analyze
int cmd_lia_slope(const std::string& mesh_path, int vertex, double decades, int count,
                  double eps_min, const std::string& out_path) {
  const TriangleMesh mesh = load_geometry(mesh_path).to_mesh(/*require_closed=*/false);
  const double h = local_spacing(mesh, vertex);
  const std::vector<double> eps = eps_from_flags(h, eps_min, decades, count);
  const LiaSlopeResult res = lia_slope(mesh, vertex, eps);
  json j{{"op", "lia_slope"},
         {"mesh", mesh_path},
         {"vertex", vertex},
         {"local_spacing", h},
         {"eps", eps},
         {"slope", vec_to_json(res.slope)},
         {"fit_residual", res.fit_residual}};
  if (res.direction_applicable) {
    j["direction_error_deg"] = res.direction_error_deg;
    j["c_n_estimate"] = res.c_n_estimate;
    j["magnitude_ratio"] = res.magnitude_ratio;
    j["j_mc"] = vec_to_json(res.j_mc);
  } else {
    j["direction_error_deg"] = nullptr; // flat point: not applicable
    j["c_n_estimate"] = nullptr;
    j["magnitude_ratio"] = nullptr;
  }
  write_json_report(out_path, std::move(j));
  return 0;
}

int cmd_energy_slope(const std::string& mesh_path, double decades, int count, double eps_min,
                     const std::string& out_path) {
  const GeometryFile file = load_geometry(mesh_path);
  json j{{"op", "energy_slope"}, {"mesh", mesh_path}};
  if (!file.triangles.empty()) {
    const TriangleMesh mesh = file.to_mesh(/*require_closed=*/false);
    const double h = max_edge_length(mesh);
    const std::vector<double> eps = eps_from_flags(h, eps_min, decades, count);
    const EnergySlopeResult res = energy_slope(mesh, eps);
    j["eps"] = eps;
    j["slope"] = res.slope;
    j["slope_per_volume"] = res.slope_per_volume;
    j["volume"] = mesh.total_area();
    j["fit_residual"] = res.fit_residual;
  } else {
    const DiscreteCurve curve = file.to_curve();
    const double h = max_edge_length(curve);
    const std::vector<double> eps = eps_from_flags(h, eps_min, decades, count);
    const EnergySlopeResult res = energy_slope(curve, file.strength, eps);
    j["eps"] = eps;
    j["slope"] = res.slope;
    j["slope_per_volume"] = res.slope_per_volume;
    j["volume"] = curve_length(curve);
    j["fit_residual"] = res.fit_residual;
  }
  write_json_report(out_path, std::move(j));
  return 0;
}

// ---------------------------------------------------------------- evaluate
int cmd_evaluate(const std::string& op, const std::string& input, const std::string& field_v,
                 const std::string& field_w, const std::string& out_path) {
  const GeometryFile file = load_geometry(input);
  json j{{"op", op}, {"input", input}, {"field_v", field_v}, {"field_w", field_w}};

  if (op == "kk") {
    const VortexConfig2D cfg = file.to_vortex_config();
    std::vector<Vec> v, w;
    for (const Vec& p : cfg.positions) {
      v.push_back(named_field(field_v, p, 2));
      w.push_back(named_field(field_w, p, 2));
    }
    j["value"] = kk_form_points(cfg, v, w);
    j["antisymmetry_check"] = kk_form_points(cfg, w, v) + j["value"].get<double>();
  } else if (op == "mw") {
    if (!file.triangles.empty()) {
      const TriangleMesh mesh = file.to_mesh(/*require_closed=*/true);
      std::vector<Vec> v, w;
      for (const Vec& p : mesh.vertices) {
        v.push_back(named_field(field_v, p, 4));
        w.push_back(named_field(field_w, p, 4));
      }
      double resid = 0.0;
      j["value"] = mw_form_membrane(mesh, v, w, &resid);
      j["projection_residual"] = resid;
      j["antisymmetry_check"] = mw_form_membrane(mesh, w, v) + j["value"].get<double>();
    } else {
      const DiscreteCurve curve = file.to_curve();
      std::vector<Vec> v, w;
      for (const Vec& p : curve.points) {
        v.push_back(named_field(field_v, p, 3));
        w.push_back(named_field(field_w, p, 3));
      }
      j["value"] = mw_form_curve(curve, v, w);
      j["antisymmetry_check"] = mw_form_curve(curve, w, v) + j["value"].get<double>();
    }
  } else if (op == "sheet-form") {
    const VortexSheet sheet = file.to_sheet();
    std::vector<Vec> v, w;
    for (const Vec& p : sheet.mesh.vertices) {
      v.push_back(named_field(field_v, p, 3));
      w.push_back(named_field(field_w, p, 3));
    }
    j["value"] = sheet_form(sheet, v, w);
    j["antisymmetry_check"] = sheet_form(sheet, w, v) + j["value"].get<double>();
  } else if (op == "pairing") {
    const VortexSheet sheet = file.to_sheet();
    std::vector<Vec> v;
    for (int t = 0; t < sheet.mesh.triangle_count(); ++t)
      v.push_back(named_field(field_v, sheet.mesh.triangle_centroid(t), 3));
    j["value"] = sheet_pairing(sheet, v);
  } else {
    throw ValidationError("cli.evaluate: unknown evaluator '" + op + "'");
  }
  write_json_report(out_path, std::move(j));
  return 0;
}

// ------------------------------------------------------------------- check
int cmd_invariants(const std::string& fixture, const std::string& out_path) {
  const auto results = run_invariants(fixture);
  json items = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    items.push_back({{"name", r.name},
                     {"pass", r.pass},
                     {"measured", r.measured},
                     {"threshold", r.threshold}});
    all_pass = all_pass && r.pass;
  }
  write_json_report(out_path,
                    json{{"op", "invariants"}, {"fixture", fixture}, {"all_pass", all_pass},
                         {"invariants", items}});
  if (!all_pass) throw NumericalError("cli.check: invariant failures on fixture " + fixture);
  return 0;
}

int cmd_acceptance(int criterion, const std::string& out_path) {
  std::vector<CriterionResult> results;
  if (criterion > 0)
    results.push_back(run_criterion(criterion));
  else
    results = run_all_criteria();
  json items = json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s  %2d  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
    items.push_back(
        {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", json::parse(r.details)}});
    all_pass = all_pass && r.pass;
  }
  if (!out_path.empty())
    write_json_report(out_path,
                      json{{"op", "acceptance"}, {"all_pass", all_pass}, {"criteria", items}});
  if (!all_pass) throw NumericalError("cli.check: acceptance criteria failed");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortexkit: singular vortex dynamics across codimensions"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  try {
    // fixture
    std::string fx_name, fx_out;
    double fx_radius = 1.0, fx_half = 1.0, fx_major = 1.0, fx_minor = 0.35, fx_band = 0.2,
           fx_df = 0.125, fx_strength = 1.0;
    int fx_level = 4, fx_dim = 4, fx_points = 33, fx_nu = 32, fx_nv = 16, fx_fibers = 8,
        fx_segments = 512, fx_count = 4;
    unsigned fx_seed = 1;
    auto* fixture = app.add_subcommand("fixture", "write a deterministic fixture file");
    fixture->add_option("name", fx_name, "fixture kind")->required();
    fixture->add_option("--out", fx_out, "output path")->required();
    fixture->add_option("--radius", fx_radius);
    fixture->add_option("--level", fx_level);
    fixture->add_option("--ambient-dim", fx_dim);
    fixture->add_option("--points", fx_points);
    fixture->add_option("--half-extent", fx_half);
    fixture->add_option("--nu", fx_nu);
    fixture->add_option("--nv", fx_nv);
    fixture->add_option("--major", fx_major);
    fixture->add_option("--minor", fx_minor);
    fixture->add_option("--band-width", fx_band);
    fixture->add_option("--fibers", fx_fibers);
    fixture->add_option("--segments", fx_segments);
    fixture->add_option("--df", fx_df);
    fixture->add_option("--count", fx_count);
    fixture->add_option("--seed", fx_seed);
    fixture->add_option("--strength", fx_strength);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "advance a flow and record diagnostics");
    simulate->require_subcommand(1);
    std::string sim_in, sim_out, sim_scheme = "rk4", sim_diag;
    double sim_dt = 1e-3;
    int sim_steps = 100, sim_resample = 0, sim_dump = 0;
    bool sim_detect = false;

    auto* sp = simulate->add_subcommand("points2d", "Kirchhoff point vortices");
    sp->add_option("--input", sim_in)->required();
    sp->add_option("--dt", sim_dt)->required()->check(CLI::PositiveNumber);
    sp->add_option("--steps", sim_steps)->required()->check(CLI::NonNegativeNumber);
    sp->add_option("--scheme", sim_scheme);
    sp->add_option("--out", sim_out)->required();
    sp->add_option("--diag-out", sim_diag);

    auto* sf = simulate->add_subcommand("filament3d", "binormal filament flow");
    sf->add_option("--input", sim_in)->required();
    sf->add_option("--dt", sim_dt)->required()->check(CLI::PositiveNumber);
    sf->add_option("--steps", sim_steps)->required()->check(CLI::NonNegativeNumber);
    sf->add_option("--out", sim_out)->required();
    sf->add_option("--resample-every", sim_resample);
    sf->add_flag("--detect-self-intersection", sim_detect);

    auto* sm = simulate->add_subcommand("membrane", "skew-mean-curvature flow");
    sm->add_option("--input", sim_in)->required();
    sm->add_option("--dt", sim_dt)->required()->check(CLI::PositiveNumber);
    sm->add_option("--steps", sim_steps)->required()->check(CLI::NonNegativeNumber);
    sm->add_option("--out", sim_out)->required();
    sm->add_option("--dump-every", sim_dump);

    auto* ss = simulate->add_subcommand("sheet-family", "family of binormal flows");
    ss->add_option("--input", sim_in)->required();
    ss->add_option("--dt", sim_dt)->required()->check(CLI::PositiveNumber);
    ss->add_option("--steps", sim_steps)->required()->check(CLI::NonNegativeNumber);
    ss->add_option("--out", sim_out)->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "asymptotic slope extraction");
    analyze->require_subcommand(1);
    std::string an_mesh, an_out;
    int an_vertex = 0, an_count = 8;
    double an_decades = 1.0, an_eps_min = 0.0;

    auto* al = analyze->add_subcommand("lia-slope", "truncated-velocity slope at a vertex");
    al->add_option("--mesh", an_mesh)->required();
    al->add_option("--vertex", an_vertex)->required();
    al->add_option("--eps-decades", an_decades)->check(CLI::PositiveNumber);
    al->add_option("--eps-count", an_count);
    al->add_option("--eps-min", an_eps_min);
    al->add_option("--out", an_out)->required();

    auto* ae = analyze->add_subcommand("energy-slope", "regularized-energy slope");
    ae->add_option("--mesh", an_mesh)->required();
    ae->add_option("--eps-decades", an_decades)->check(CLI::PositiveNumber);
    ae->add_option("--eps-count", an_count);
    ae->add_option("--eps-min", an_eps_min);
    ae->add_option("--out", an_out)->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "symplectic form and pairing evaluators");
    evaluate->require_subcommand(1);
    std::string ev_in, ev_out, ev_v = "random:1", ev_w = "random:2";
    for (const char* name : {"mw", "kk", "sheet-form", "pairing"}) {
      auto* sub = evaluate->add_subcommand(name);
      sub->add_option("--input", ev_in)->required();
      sub->add_option("--field-v", ev_v);
      sub->add_option("--field-w", ev_w);
      sub->add_option("--out", ev_out)->required();
    }

    // check
    auto* check = app.add_subcommand("check", "invariant and acceptance batteries");
    check->require_subcommand(1);
    std::string ck_fixture = "sphere4d", ck_out;
    int ck_criterion = 0;
    auto* ci = check->add_subcommand("invariants", "per-fixture invariant battery");
    ci->add_option("--fixture", ck_fixture);
    ci->add_option("--out", ck_out)->required();
    auto* ca = check->add_subcommand("acceptance", "project acceptance criteria");
    ca->add_option("--criterion", ck_criterion);
    ca->add_option("--out", ck_out);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (fixture->parsed())
      return cmd_fixture(fx_name, fx_out, fx_radius, fx_level, fx_dim, fx_points, fx_half, fx_nu,
                         fx_nv, fx_major, fx_minor, fx_band, fx_fibers, fx_segments, fx_df,
                         fx_count, fx_seed, fx_strength);
    if (sp->parsed()) return cmd_points2d(sim_in, sim_dt, sim_steps, sim_scheme, sim_out, sim_diag);
    if (sf->parsed())
      return cmd_filament(sim_in, sim_dt, sim_steps, sim_out, sim_resample, sim_detect);
    if (sm->parsed()) return cmd_membrane(sim_in, sim_dt, sim_steps, sim_out, sim_dump);
    if (ss->parsed()) return cmd_sheet_family(sim_in, sim_dt, sim_steps, sim_out);
    if (al->parsed())
      return cmd_lia_slope(an_mesh, an_vertex, an_decades, an_count, an_eps_min, an_out);
    if (ae->parsed()) return cmd_energy_slope(an_mesh, an_decades, an_count, an_eps_min, an_out);
    for (auto* sub : evaluate->get_subcommands())
      if (sub->parsed()) return cmd_evaluate(sub->get_name(), ev_in, ev_v, ev_w, ev_out);
    if (ci->parsed()) return cmd_invariants(ck_fixture, ck_out);
    if (ca->parsed()) return cmd_acceptance(ck_criterion, ck_out);
    return 2;
  } catch (const ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const NumericalError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}
