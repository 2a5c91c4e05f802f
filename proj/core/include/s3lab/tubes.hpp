// Focal radius estimation, Fermi-coordinate tube volumes, and the
// six-inequality chain verifier for tori.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "s3lab/quadrature.hpp"
#include "s3lab/surfaces.hpp"

namespace s3lab {

/// A tubular neighborhood B(S, r); radii are restricted to (0, pi/2).
struct TubeSpec {
    TubeSpec(SurfaceImmersion s, double r);

    SurfaceImmersion surface;
    double radius;
};

/// First zero of the Fermi factor cos t - kappa sin t over both normal sides:
/// arctan(1 / |kappa|), pi/2 for kappa = 0.
double pointwise_focal_distance(double kappa1, double kappa2);

/// min over grid samples of the pointwise focal distance. Optional outputs:
/// the argmin parameter location and the largest |kappa_i| seen.
double curvature_focal_radius(const SurfaceImmersion& S, const QuadratureGrid& grid,
                              double* argmin_u = nullptr, double* argmin_v = nullptr,
                              double* max_abs_kappa = nullptr);

struct ReachParams {
    int resolution = 128;            // base samples per parameter direction
    double tolerance = 0.05;         // error if the base spacing exceeds this
    bool check_opposite_side = true; // also test +normal against -normal segments
};

struct ReachEstimate {
    double value;      // first detected segment-collision radius, pi/2 if none
    double tolerance;  // +- localization scale (spacing / 2 + step along segments)
};

/// Samples geodesic segments along both unit normals, truncated at the
/// pointwise curvature focal distance, and reports the smallest radius at
/// which samples from well-separated base points collide. Collisions are
/// screened through the local sample lattice so that normal families merely
/// converging toward a focal locus do not count; only genuinely distinct
/// sheets do. A spatial hash over ambient 4-space keeps the scan near-linear.
ReachEstimate reach_estimate(const SurfaceImmersion& S, const ReachParams& params = {});

struct FocalParams {
    int curvature_grid = 256;
    ReachParams reach;
};

struct FocalReport {
    double curvature_focal;
    double reach_value;
    double reach_tolerance;
    double focal_radius;  // min(curvature_focal, reach_value)
    double argmin_u, argmin_v;
};

FocalReport focal_radius(const SurfaceImmersion& S, const FocalParams& params = {});

struct TubeVolume {
    double value;
    bool beyond_focal;  // r exceeded the focal radius; the integrand may go negative
};

/// Fermi-coordinate tube volume: surface quadrature of the Gauss-Legendre
/// t-integral of (cos t - k1 sin t)(cos t - k2 sin t) over [-r, r].
TubeVolume tube_volume_numeric(const TubeSpec& spec, const QuadratureGrid& grid, int n_t = 32,
                               std::optional<double> focal_hint = std::nullopt);

/// sin(2r) * area + 2 pi chi * (r - sin r cos r) with chi from the topology tag.
double tube_volume_closed(const TubeSpec& spec, const QuadratureGrid& grid);

struct ChainRow {
    std::string id;        // "eq1" .. "eq6", "curvature_bound"
    std::string relation;  // human-readable "lhs <= rhs" text
    double lhs, rhs;
    bool asserted;  // whether the relation applies at this radius
    bool holds;     // lhs <= rhs + 1e-6
};

struct ChainReport {
    double radius = 0.0;
    double focal = 0.0;
    bool vacuous = false;  // r exceeded the focal radius
    double area = 0.0;
    double willmore = 0.0;
    double tube_volume = 0.0;
    double bending = 0.0;  // integral of (k1^2 + k2^2)/2
    double max_abs_kappa = 0.0;
    std::vector<ChainRow> rows;

    bool all_asserted_hold() const;
};

/// Evaluates both sides of the torus inequality chain at radius r.
/// Relations that the derivation only yields for r >= pi/4 are evaluated but
/// not asserted below that; a radius beyond the focal radius marks the whole
/// report vacuous instead of failing.
ChainReport verify_inequality_chain(const SurfaceImmersion& S, double r,
                                    const QuadratureGrid& grid,
                                    std::optional<double> focal_hint = std::nullopt);

}  // namespace s3lab
