// Timing harness for the OpenMP kernels against their serial reference
// implementations. The pairs are bit-identical by construction (per-slot
// writes, ordered reductions); this tool reports wall time and speedup.
//
//   ./bench_kernels [repeats]

#include "vortex/biotsavart.hpp"
#include "vortex/energy.hpp"
#include "vortex/filament.hpp"
#include "vortex/fixtures.hpp"
#include "vortex/membrane_flow.hpp"
#include "vortex/mesh_geometry.hpp"
#include "vortex/numerics.hpp"
#include "vortex/pointvortex.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

using namespace vortex;

namespace {

double time_best(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const std::string& name, double serial, double parallel) {
  std::printf("%-34s serial %8.4f s   omp %8.4f s   speedup %5.2fx\n", name.c_str(), serial,
              parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, repeats: %d\n", omp_get_max_threads(), repeats);

  {
    // jittered lattice; the separation-constrained fixture tops out near N=60
    VortexConfig2D cfg;
    DeterministicRng rng(9);
    const int side = 40;
    for (int iy = 0; iy < side; ++iy)
      for (int ix = 0; ix < side; ++ix) {
        cfg.positions.push_back(
            make_vec2(ix + rng.uniform(-0.3, 0.3), iy + rng.uniform(-0.3, 0.3)));
        cfg.strengths.push_back(rng.next_double() < 0.5 ? 1.0 : -1.0);
      }
    report("kirchhoff_velocity (N=1600)",
           time_best([&] { kirchhoff_velocity_serial(cfg); }, repeats),
           time_best([&] { kirchhoff_velocity(cfg); }, repeats));
  }
  {
    const DiscreteCurve curve = make_perturbed_circle(20000, 0.05, 4);
    report("binormal_velocity (m=20000)",
           time_best([&] { binormal_velocity_serial(curve); }, repeats),
           time_best([&] { binormal_velocity(curve); }, repeats));
  }
  {
    const TriangleMesh sphere = make_icosphere(5, 1.0, 4);
    report("mean_curvature_all (10242 verts)",
           time_best([&] { mean_curvature_all_serial(sphere); }, repeats),
           time_best([&] { mean_curvature_all(sphere); }, repeats));
    report("vertex_frames_all (10242 verts)",
           time_best([&] { vertex_frames_all_serial(sphere); }, repeats),
           time_best([&] { vertex_frames_all(sphere); }, repeats));
    report("skew_mc_velocity (10242 verts)",
           time_best([&] { skew_mc_velocity_serial(sphere); }, repeats),
           time_best([&] { skew_mc_velocity(sphere); }, repeats));

    const Vec q = make_vec4(1.05, 0.2, 0.1, 0.05);
    report("velocity_membrane (20480 tris)",
           time_best([&] { velocity_membrane_serial(sphere, q); }, repeats),
           time_best([&] { velocity_membrane(sphere, q); }, repeats));

    const double h = local_spacing(sphere, 100);
    std::vector<double> eps;
    for (int k = 0; k < 8; ++k) eps.push_back(3.0 * h * std::pow(10.0, k / 7.0));
    report("truncated_profile (20480 tris)",
           time_best([&] { truncated_velocity_profile_serial(sphere, 100, eps); }, repeats),
           time_best([&] { truncated_velocity_profile(sphere, 100, eps); }, repeats));
  }
  {
    const TriangleMesh sphere = make_icosphere(4, 1.0, 4);
    const double h = max_edge_length(sphere);
    std::vector<double> eps;
    for (int k = 0; k < 8; ++k) eps.push_back(3.0 * h * std::pow(10.0, k / 7.0));
    report("energy_profile (5120 tris)",
           time_best([&] { energy_profile_serial(sphere, eps); }, repeats),
           time_best([&] { energy_profile(sphere, eps); }, repeats));
  }
  return 0;
}
