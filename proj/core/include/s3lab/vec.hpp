// Small fixed-size vector helpers for the ambient R^4 of the unit 3-sphere.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace s3lab {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec4 add(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4 sub(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Vec4 scale(const Vec4& a, double s) {
    return {a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 scale(const Vec3& a, double s) {
    return {a[0] * s, a[1] * s, a[2] * s};
}

// a*x + b*y
inline Vec4 combine(double a, const Vec4& x, double b, const Vec4& y) {
    return {a * x[0] + b * y[0], a * x[1] + b * y[1], a * x[2] + b * y[2], a * x[3] + b * y[3]};
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec4 normalized(const Vec4& a) {
    const double n = norm(a);
    if (n < 1e-14) throw std::invalid_argument("cannot normalize a near-zero 4-vector");
    return scale(a, 1.0 / n);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Generalized cross product in R^4: the unique vector orthogonal to a, b, c
// with det[n; a; b; c] = |n|^2 (cofactor expansion along the first row).
// The argument order fixes the orientation of every normal in this library.
inline Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
    auto det3 = [](double m00, double m01, double m02,
                   double m10, double m11, double m12,
                   double m20, double m21, double m22) {
        return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
               m02 * (m10 * m21 - m11 * m20);
    };
    Vec4 n;
    n[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
    n[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
    n[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
    n[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
    return n;
}

inline double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

// Geodesic distance between unit vectors on S^3.
inline double dist_s3(const Vec4& p, const Vec4& q) {
    return std::acos(clamp_unit(dot(p, q)));
}

// Point at arc length t along the great circle through unit p in unit tangent direction u.
inline Vec4 geodesic_point(const Vec4& p, const Vec4& u, double t) {
    return combine(std::cos(t), p, std::sin(t), u);
}

}  // namespace s3lab
