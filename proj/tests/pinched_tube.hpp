// Test fixture: a torus whose reach is strictly below its curvature focal
// radius. Normal tube of radius rho0 around the (2,1)-wrapping curve
//   gamma(u) = exp(2iu) exp(j (u + c cos u))
// in the flat Hopf chart. The curve passes near the antipodal-identification
// copy of itself, so two tube sheets face each other across a gap the
// curvature never sees.
#pragma once

#include <cmath>

#include "s3lab/surfaces.hpp"

namespace s3lab_test {

inline s3lab::Vec4 qmul(const s3lab::Vec4& a, const s3lab::Vec4& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline s3lab::Vec4 pinched_tube_position(double u, double v, double c, double rho0) {
    using s3lab::Vec4;
    const double th = 2.0 * u;
    const double sg = u + c * std::cos(u);
    const double sgp = 1.0 - c * std::sin(u);
    const double s2 = std::sin(2.0 * sg), c2 = std::cos(2.0 * sg);
    const double speed = std::sqrt(4.0 + sgp * sgp);
    const Vec4 A{std::cos(th), std::sin(th), 0, 0};
    const Vec4 B{std::cos(sg), 0, std::sin(sg), 0};
    const Vec4 g = qmul(A, B);
    // Normal frame adapted to the winding of the tangent about the j-axis.
    const Vec4 f1{0, -s2, 0, c2};
    const Vec4 f2{0, sgp * c2 / speed, -2.0 / speed, sgp * s2 / speed};
    const Vec4 w = s3lab::combine(std::cos(v), qmul(g, f1), std::sin(v), qmul(g, f2));
    return s3lab::combine(std::cos(rho0), g, std::sin(rho0), w);
}

inline s3lab::SurfaceImmersion pinched_tube(double c = 0.545, double rho0 = 0.26) {
    return s3lab::surface_from_position(
        s3lab::SurfaceTopology::torus,
        [c, rho0](double u, double v) { return pinched_tube_position(u, v, c, rho0); }, 2e-3,
        "pinched_tube");
}

}  // namespace s3lab_test
