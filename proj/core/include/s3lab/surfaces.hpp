// Parametrized surface immersions in S^3: built-in families, curvature frames,
// grid-file exchange, and the area / Willmore / Gauss-Bonnet integrals.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "s3lab/curves.hpp"
#include "s3lab/quadrature.hpp"
#include "s3lab/vec.hpp"

namespace s3lab {

enum class SurfaceTopology { torus, sphere };

/// Second-order jet of a parametrized surface at one (u, v).
struct SurfaceJet {
    Vec4 x, xu, xv, xuu, xuv, xvv;
};

/// A C^2 immersion into S^3. Torus surfaces are doubly 2pi-periodic; sphere
/// surfaces use polar coordinates u in (0, pi), v in [0, 2pi) and are only
/// evaluated away from the two caps.
class SurfaceImmersion {
  public:
    using JetFn = std::function<SurfaceJet(double, double)>;

    SurfaceImmersion(SurfaceTopology topology, JetFn jet, std::string name);

    SurfaceJet jet(double u, double v) const { return jet_(u, v); }
    Vec4 position(double u, double v) const { return jet_(u, v).x; }
    SurfaceTopology topology() const { return topology_; }
    const std::string& name() const { return name_; }

  private:
    void validate() const;

    SurfaceTopology topology_;
    JetFn jet_;
    std::string name_;
};

/// Jet of y/|y| from the jet of an ambient map y (radial projection to S^3).
SurfaceJet normalized_jet(const SurfaceJet& ambient);

/// Immersion from an ambient (not necessarily unit-norm) analytic jet.
SurfaceImmersion surface_from_ambient_jet(SurfaceTopology topology,
                                          SurfaceImmersion::JetFn ambient_jet, std::string name);

/// Immersion from a bare position map; derivatives by 4th-order central
/// differences with the given step.
SurfaceImmersion surface_from_position(SurfaceTopology topology,
                                       std::function<Vec4(double, double)> position,
                                       double fd_step, std::string name);

// Built-in families -----------------------------------------------------------

/// (cos a e^{iu}, sin a e^{iv}); flat, principal curvatures {tan a, -cot a}.
SurfaceImmersion rotation_torus(double a);

/// rotation_torus(pi/4): the minimal flat torus |z1| = |z2| = 1/sqrt(2).
SurfaceImmersion clifford_torus();

/// Geodesic sphere of radius rho about a center; umbilic with kappa = cot(rho)
/// for the cross4(x, xu, xv) normal, which points toward the center.
SurfaceImmersion geodesic_sphere(double rho, const Vec4& center = {0, 0, 0, 1});

/// Clifford torus perturbed in ambient 4-space by a random trigonometric
/// polynomial of modes up to `max_mode`, scaled so the largest ambient
/// displacement equals `amplitude`, then projected back to S^3.
SurfaceImmersion fourier_torus(std::uint64_t seed, double amplitude, int max_mode = 2);

/// Parallel surface exp_x(t n(x)); derivatives by finite differences.
SurfaceImmersion offset_surface(const SurfaceImmersion& base, double t, double fd_step = 1e-3);

/// Built-in factory keyed by family name (CLI surface/curve specs).
using BuiltinObject = std::variant<SurfaceImmersion, ClosedCurve, std::pair<ClosedCurve, ClosedCurve>>;
BuiltinObject make_builtin(const std::string& name, const std::vector<double>& params);

// Curvature --------------------------------------------------------------------

/// Per-point curvature record. The normal is the normalized generalized cross
/// product of (position, xu, xv); kappa1 >= kappa2 are the eigenvalues of
/// g^{-1} h for that normal.
struct CurvatureFrame {
    Vec4 point;
    Vec4 normal;
    double g11, g12, g22;
    double h11, h12, h22;
    double kappa1, kappa2;
    double mean;             // (kappa1 + kappa2) / 2
    double gauss_extrinsic;  // kappa1 * kappa2
    double area_element;     // sqrt(det g)
};

CurvatureFrame curvature_frame(const SurfaceImmersion& S, double u, double v);
CurvatureFrame curvature_frame(const SurfaceJet& jet);

// Integrals ---------------------------------------------------------------------

/// Integral of f dmu over the surface. Torus: periodic trapezoid on the grid.
/// Sphere: Gauss-Legendre in cos(polar) x trapezoid in azimuth, using the
/// grid sizes as node counts; the caps are never sampled.
double surface_integral(const SurfaceImmersion& S, const QuadratureGrid& grid,
                        const std::function<double(const CurvatureFrame&)>& f);

double area(const SurfaceImmersion& S, const QuadratureGrid& grid);

/// Willmore energy in S^3: integral of 1 + H^2.
double willmore_energy(const SurfaceImmersion& S, const QuadratureGrid& grid);

/// (1/2pi) integral of (1 + kappa1 kappa2) dmu; near chi of the topology
/// (Gauss equation K = 1 + kappa1 kappa2 in S^3 plus Gauss-Bonnet).
double gauss_bonnet_characteristic(const SurfaceImmersion& S, const QuadratureGrid& grid);

// Grid-surface files -------------------------------------------------------------

/// Plain-text grid format: header "n_u n_v", then row-major "i j x0 x1 x2 x3"
/// with 17 significant digits (bit-exact double round trip).
void save_grid_surface(const SurfaceImmersion& S, int n_u, int n_v, const std::string& path);

/// Loads a torus-topology grid surface; 4th-order periodic finite-difference
/// derivatives at the nodes, bicubic interpolation off them.
SurfaceImmersion load_grid_surface(const std::string& path);

}  // namespace s3lab
