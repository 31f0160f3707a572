#pragma once

#include "vortex/curve.hpp"
#include "vortex/mesh.hpp"
#include "vortex/pointvortex.hpp"
#include "vortex/symplectic.hpp"

namespace vortex {

// All generators are deterministic: same arguments, same bytes.

// Closed circle of radius r in the z = 0 plane of R^3, counterclockwise seen
// from +z.
DiscreteCurve make_circle3d(int segments, double radius = 1.0);

// Open helix (a cos t, a sin t, b t), t in [0, 2 pi turns].
DiscreteCurve make_helix(int samples, double a, double b, double turns);

// Closed planar curve r(theta) = 1 + amp cos(k theta) in the z = 0 plane.
DiscreteCurve make_wavy_circle(int segments, double amp, int k);

// Smoothly perturbed circle (low harmonics in radius and height), seeded.
DiscreteCurve make_perturbed_circle(int segments, double amp, unsigned seed);

// Subdivided icosahedron sphere of given radius, outward winding. ambient_dim
// 3 or 4 (embedded in the x4 = 0 slice for 4). Level L has 10*4^L + 2 vertices.
TriangleMesh make_icosphere(int level, double radius, int ambient_dim);

// Icosphere scaled per axis (a, b, c) before embedding; the flattened
// ellipsoid energy fixture.
TriangleMesh make_ellipsoid(int level, double a, double b, double c, int ambient_dim);

// Open square patch [-half, half]^2 in the (x1, x2)-plane of R^4,
// (points_per_side)^2 vertices.
TriangleMesh make_flat_patch4d(int points_per_side, double half_extent);

// Torus of revolution in R^3 (major R, minor r) with the closed, non-exact
// 1-form alpha = d(theta)/2pi on its edges (theta the angle around the axis).
VortexSheet make_torus_band_sheet(int nu, int nv, double major, double minor);

// Unit icosphere in R^3 carrying the exact 1-form alpha = df with f a smooth
// ramp from 0 to 1 across the band |z| <= width around the equator.
VortexSheet make_sphere_band_sheet(int level, double width);

// Coaxial unit circles stacked along z with spacing df.
SheetFibration make_cylinder_fibration(int fibers, int segments, double df);

// N random vortices in [-1, 1]^2 with strengths in +-[0.5, 1.5], minimum
// separation 0.25, deterministic in the seed.
VortexConfig2D make_random_vortices(int count, unsigned seed);

} // namespace vortex
