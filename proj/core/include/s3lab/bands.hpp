// Tube bands over surfaces in Fermi coordinates, intrinsic width via grid
// shortest paths, and parallel-surface convexity probes.
#pragma once

#include <optional>

#include "s3lab/quadrature.hpp"
#include "s3lab/surfaces.hpp"
#include "s3lab/tubes.hpp"

namespace s3lab {

/// Fermi-coordinate band of half-thickness r over a core surface, with
/// boundary faces at t = -r (lower, Y-) and t = +r (upper, Y+).
/// Requires r <= 0.98 * focal radius so the chart is a diffeomorphism and the
/// Fermi area element stays positive.
class Band {
  public:
    Band(SurfaceImmersion core, double r, FocalReport focal);

    const SurfaceImmersion& core() const { return core_; }
    double radius() const { return radius_; }
    const FocalReport& focal() const { return focal_; }

    /// Band axis relative to the core frame normal: +1 for tori, -1 for
    /// sphere cores, so the lower face of a sphere band is the inner
    /// parallel sphere.
    double axis_sign() const { return axis_sign_; }

    /// Ambient embedding exp_{S(u,v)}(t a(u,v)) with a the band axis,
    /// t in [-r, r].
    Vec4 embed(double u, double v, double t) const;

    /// Fermi area element (cos t - k1 sin t)(cos t - k2 sin t) at (u, v, t),
    /// curvatures taken with respect to the band axis.
    double metric_factor(double u, double v, double t) const;

  private:
    SurfaceImmersion core_;
    double radius_;
    FocalReport focal_;
    double axis_sign_;
};

Band build_tube_band(const SurfaceImmersion& S, double r,
                     std::optional<FocalReport> focal_hint = std::nullopt);

struct BandResolution {
    int n_u, n_v, n_t;

    /// n x n x (n/2 + 1), the shape used throughout the width experiments.
    static BandResolution cubic(int n) { return {n, n, n / 2 + 1}; }
};

struct BandWidthReport {
    double width;        // shortest-path distance between the two faces
    double radius;
    BandResolution resolution;
    double error_bound;  // stencil anisotropy bound (8% worst case)
};

/// Multi-source Dijkstra from every lower-face vertex to the upper face on
/// the Fermi lattice with 26-neighbor stencils; edge weights are ambient
/// geodesic distances, priority ties broken by vertex index. Converges to the
/// intrinsic width from above; equals 2r for tube bands in the limit.
BandWidthReport band_width(const Band& band, const BandResolution& resolution);

struct LevelsetReport {
    double level;      // distance from the lower face, in (0, 2r)
    double t_offset;   // level - r
    int samples;
    // Principal curvatures of the parallel surface, signed for the normal
    // pointing back toward the lower face (a geodesic sphere of radius rho
    // reads +cot rho).
    double kappa_min, kappa_max;
    double min_toward_lower;  // min over samples of the smaller curvature
    bool strictly_convex;     // min_toward_lower > 0 (informational)
};

/// Curvature probe of the parallel surface at the given distance from the
/// lower face. Reports values only; tube-band level sets are parallel tori
/// and need not be convex.
LevelsetReport levelset_convexity_probe(const Band& band, double level,
                                        const QuadratureGrid& grid);

}  // namespace s3lab
