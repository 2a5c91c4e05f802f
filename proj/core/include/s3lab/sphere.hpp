// Round-sphere primitives: points, tangents, geodesics, ball volumes and
// stereographic charts. Everything works on the unit n-sphere (curvature 1);
// n = 3 is the default and the case the rest of the library lives on.
#pragma once

#include <vector>

#include "s3lab/vec.hpp"

namespace s3lab {

/// A point of S^n stored as its ambient unit vector in R^{n+1}.
/// Construction normalizes; inputs more than 1e-8 away from unit norm are rejected.
class SpherePoint {
  public:
    explicit SpherePoint(std::vector<double> coords);
    static SpherePoint from_vec4(const Vec4& v);

    int dimension() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<double>& coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }

    Vec4 to_vec4() const;

  private:
    std::vector<double> coords_;
};

/// A tangent vector at a base point; dir must be orthogonal to the base (1e-10).
struct TangentVector {
    TangentVector(SpherePoint base_point, std::vector<double> direction);

    SpherePoint base;
    std::vector<double> dir;
};

/// Angle in [0, pi] between two points of the same sphere.
double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

/// Geodesic flow: cos(t) * base + sin(t) * dir for a unit tangent.
SpherePoint exp_map(const TangentVector& v, double t);

/// Unit tangent at p pointing toward q; undefined (throws) for q = +-p.
TangentVector log_map(const SpherePoint& p, const SpherePoint& q);

/// Volume of the geodesic ball of radius s in S^3: pi * (2s - sin 2s), s in [0, pi].
double ball_volume(double s);

/// Stereographic projection of S^n minus a pole onto R^n, with a deterministic
/// orthonormal basis of the pole's orthogonal complement fixing the chart.
class StereographicChart {
  public:
    explicit StereographicChart(SpherePoint pole);

    const SpherePoint& pole() const { return pole_; }

    /// Chart image of p; throws when p is within 1e-6 of the pole.
    std::vector<double> project(const SpherePoint& p) const;

    /// Inverse chart; project(unproject(y)) == y.
    SpherePoint unproject(const std::vector<double>& y) const;

    /// Differential of the chart at p applied to an ambient tangent w.
    std::vector<double> push_forward(const SpherePoint& p, const std::vector<double>& w) const;

  private:
    SpherePoint pole_;
    std::vector<std::vector<double>> basis_;  // orthonormal basis of pole^perp
};

std::vector<double> stereographic_project(const SpherePoint& p, const SpherePoint& pole);

}  // namespace s3lab
