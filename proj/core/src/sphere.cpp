#include "s3lab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace s3lab {

namespace {

double vnorm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_same_dimension(const SpherePoint& p, const SpherePoint& q) {
    if (p.dimension() != q.dimension())
        throw std::invalid_argument("sphere points live on different spheres (dimension " +
                                    std::to_string(p.dimension()) + " vs " +
                                    std::to_string(q.dimension()) + ")");
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw std::invalid_argument("a sphere point needs at least 2 coordinates");
    const double n = vnorm(coords_);
    if (std::abs(n - 1.0) > 1e-8)
        throw std::invalid_argument("sphere point norm " + std::to_string(n) +
                                    " is more than 1e-8 away from 1");
    for (double& x : coords_) x /= n;
}

SpherePoint SpherePoint::from_vec4(const Vec4& v) {
    return SpherePoint(std::vector<double>(v.begin(), v.end()));
}

Vec4 SpherePoint::to_vec4() const {
    if (coords_.size() != 4) throw std::logic_error("not a point of S^3");
    return {coords_[0], coords_[1], coords_[2], coords_[3]};
}

TangentVector::TangentVector(SpherePoint base_point, std::vector<double> direction)
    : base(std::move(base_point)), dir(std::move(direction)) {
    if (dir.size() != base.coords().size())
        throw std::invalid_argument("tangent direction dimension does not match base point");
    if (std::abs(vdot(dir, base.coords())) > 1e-10)
        throw std::invalid_argument("tangent direction is not orthogonal to its base point");
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
    check_same_dimension(p, q);
    return std::acos(clamp_unit(vdot(p.coords(), q.coords())));
}

SpherePoint exp_map(const TangentVector& v, double t) {
    const double n = vnorm(v.dir);
    if (std::abs(n - 1.0) > 1e-10)
        throw std::invalid_argument("exp_map needs a unit tangent direction, |dir| = " +
                                    std::to_string(n));
    const double c = std::cos(t), s = std::sin(t);
    std::vector<double> out(v.dir.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * v.base[i] + s * v.dir[i];
    return SpherePoint(std::move(out));
}

TangentVector log_map(const SpherePoint& p, const SpherePoint& q) {
    check_same_dimension(p, q);
    const double c = clamp_unit(vdot(p.coords(), q.coords()));
    if (c > 1.0 - 1e-10) throw std::invalid_argument("log_map undefined: points coincide");
    if (c < -1.0 + 1e-10) throw std::invalid_argument("log_map undefined: points are antipodal");
    // Component of q orthogonal to p, normalized.
    std::vector<double> w(q.coords());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * p[i];
    const double n = vnorm(w);
    for (double& x : w) x /= n;
    return TangentVector(p, std::move(w));
}

double ball_volume(double s) {
    if (s < 0.0 || s > M_PI)
        throw std::invalid_argument("ball radius must lie in [0, pi], got " + std::to_string(s));
    return M_PI * (2.0 * s - std::sin(2.0 * s));
}

StereographicChart::StereographicChart(SpherePoint pole) : pole_(std::move(pole)) {
    const std::size_t m = pole_.coords().size();
    // Deterministic orthonormal basis of pole^perp: Gram-Schmidt over the
    // standard axes, most-orthogonal-to-the-pole axes first, index tie-break.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(pole_[a]) < std::abs(pole_[b]);
    });
    for (std::size_t axis : order) {
        if (basis_.size() + 1 == m) break;
        std::vector<double> v(m, 0.0);
        v[axis] = 1.0;
        double c = pole_[axis];
        for (std::size_t i = 0; i < m; ++i) v[i] -= c * pole_[i];
        for (const auto& b : basis_) {
            const double d = vdot(v, b);
            for (std::size_t i = 0; i < m; ++i) v[i] -= d * b[i];
        }
        const double n = vnorm(v);
        if (n < 1e-8) continue;
        for (double& x : v) x /= n;
        basis_.push_back(std::move(v));
    }
    if (basis_.size() + 1 != m) throw std::logic_error("failed to build a stereographic basis");
    // Canonical handedness: det[pole; b0; ...; b_{n-1}] > 0, so charts from
    // different poles are consistently oriented (linking signs agree).
    if (m == 4) {
        const Vec4 c = cross4({basis_[0][0], basis_[0][1], basis_[0][2], basis_[0][3]},
                              {basis_[1][0], basis_[1][1], basis_[1][2], basis_[1][3]},
                              {basis_[2][0], basis_[2][1], basis_[2][2], basis_[2][3]});
        double det = 0.0;
        for (int i = 0; i < 4; ++i) det += pole_[i] * c[i];
        if (det > 0.0)
            for (double& x : basis_.back()) x = -x;
    }
}

std::vector<double> StereographicChart::project(const SpherePoint& p) const {
    check_same_dimension(p, pole_);
    if (geodesic_distance(p, pole_) <= 1e-6)
        throw std::invalid_argument("stereographic projection undefined near the pole");
    const double c = vdot(p.coords(), pole_.coords());
    const double f = 1.0 / (1.0 - c);
    std::vector<double> out(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) out[k] = f * vdot(p.coords(), basis_[k]);
    return out;
}

SpherePoint StereographicChart::unproject(const std::vector<double>& y) const {
    if (y.size() != basis_.size())
        throw std::invalid_argument("chart image has the wrong dimension");
    double rho2 = 0.0;
    for (double v : y) rho2 += v * v;
    const std::size_t m = pole_.coords().size();
    std::vector<double> out(m);
    const double a = (rho2 - 1.0) / (rho2 + 1.0);
    const double b = 2.0 / (rho2 + 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        double x = a * pole_[i];
        for (std::size_t k = 0; k < basis_.size(); ++k) x += b * y[k] * basis_[k][i];
        out[i] = x;
    }
    return SpherePoint(std::move(out));
}

std::vector<double> StereographicChart::push_forward(const SpherePoint& p,
                                                     const std::vector<double>& w) const {
    check_same_dimension(p, pole_);
    if (w.size() != p.coords().size())
        throw std::invalid_argument("tangent vector dimension mismatch");
    const double c = vdot(p.coords(), pole_.coords());
    const double cw = vdot(w, pole_.coords());
    const double f = 1.0 / (1.0 - c);
    // d/dt [ <p, b> / (1 - <p, N>) ] = <w, b>/(1-c) + <p, b> <w, N>/(1-c)^2
    std::vector<double> out(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k)
        out[k] = f * vdot(w, basis_[k]) + f * f * cw * vdot(p.coords(), basis_[k]);
    return out;
}

std::vector<double> stereographic_project(const SpherePoint& p, const SpherePoint& pole) {
    return StereographicChart(pole).project(p);
}

}  // namespace s3lab
