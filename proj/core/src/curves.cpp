#include "s3lab/curves.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace s3lab {

ClosedCurve::ClosedCurve(PointFn position, PointFn velocity, int samples, std::string name)
    : position_(std::move(position)),
      velocity_(std::move(velocity)),
      samples_(samples),
      name_(std::move(name)) {
    if (samples_ < 8) throw std::invalid_argument("curve sample resolution must be >= 8");
    validate();
}

ClosedCurve ClosedCurve::from_position_fn(PointFn position, int samples, std::string name) {
    const double h = 2.0 * M_PI / (8.0 * samples);
    PointFn pos = position;
    PointFn vel = [pos, h](double u) {
        const Vec4 a = pos(u + 2.0 * h), b = pos(u + h), c = pos(u - h), d = pos(u - 2.0 * h);
        Vec4 out;
        for (int i = 0; i < 4; ++i) out[i] = (-a[i] + 8.0 * b[i] - 8.0 * c[i] + d[i]) / (12.0 * h);
        return out;
    };
    return ClosedCurve(std::move(pos), std::move(vel), samples, std::move(name));
}

void ClosedCurve::validate() const {
    const Vec4 start = position_(0.0);
    const Vec4 end = position_(2.0 * M_PI);
    if (norm(sub(start, end)) > 1e-9)
        throw std::invalid_argument("curve '" + name_ + "' is not closed");
    for (int k = 0; k < samples_; ++k) {
        const double u = 2.0 * M_PI * k / samples_;
        const Vec4 x = position_(u);
        if (std::abs(norm(x) - 1.0) > 1e-8)
            throw std::invalid_argument("curve '" + name_ + "' leaves the unit sphere at u = " +
                                        std::to_string(u));
        if (norm(velocity_(u)) <= 1e-6)
            throw std::invalid_argument("curve '" + name_ + "' is not regular at u = " +
                                        std::to_string(u));
    }
}

std::vector<Vec4> ClosedCurve::sample(int m) const {
    std::vector<Vec4> out(m);
    for (int k = 0; k < m; ++k) out[k] = position_(2.0 * M_PI * k / m);
    return out;
}

ClosedCurve great_circle(const Vec4& e, const Vec4& f, int samples) {
    const Vec4 e1 = normalized(e);
    Vec4 f1 = sub(f, scale(e1, dot(f, e1)));
    if (norm(f1) < 1e-10)
        throw std::invalid_argument("great circle frame vectors are parallel");
    f1 = normalized(f1);
    return ClosedCurve(
        [e1, f1](double u) { return combine(std::cos(u), e1, std::sin(u), f1); },
        [e1, f1](double u) { return combine(-std::sin(u), e1, std::cos(u), f1); }, samples,
        "great_circle");
}

ClosedCurve torus_knot_curve(int p, int q, double a, int samples) {
    if (p < 1 || q < 1) throw std::invalid_argument("torus knot needs positive winding numbers");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("torus knot windings (" + std::to_string(p) + ", " +
                                    std::to_string(q) + ") are not coprime");
    if (!(a > 0.0 && a < M_PI / 2.0))
        throw std::invalid_argument("torus knot radius parameter must lie in (0, pi/2)");
    const double c = std::cos(a), s = std::sin(a);
    return ClosedCurve(
        [=](double u) {
            return Vec4{c * std::cos(p * u), c * std::sin(p * u), s * std::cos(q * u),
                        s * std::sin(q * u)};
        },
        [=](double u) {
            return Vec4{-c * p * std::sin(p * u), c * p * std::cos(p * u), -s * q * std::sin(q * u),
                        s * q * std::cos(q * u)};
        },
        samples, "torus_knot(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

std::pair<ClosedCurve, ClosedCurve> hopf_pair(int samples) {
    ClosedCurve a = great_circle(Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, samples);
    ClosedCurve b = great_circle(Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}, samples);
    return {std::move(a), std::move(b)};
}

}  // namespace s3lab
