// Closed parametrized curves in S^3 and the built-in families used throughout.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "s3lab/vec.hpp"

namespace s3lab {

/// A smooth closed curve u in [0, 2pi) -> S^3 with derivative access.
/// Validation samples the curve: closure within 1e-9, |velocity| > 1e-6.
class ClosedCurve {
  public:
    using PointFn = std::function<Vec4(double)>;

    ClosedCurve(PointFn position, PointFn velocity, int samples, std::string name);

    /// Builds the velocity by 4th-order central differences of the position.
    static ClosedCurve from_position_fn(PointFn position, int samples, std::string name);

    Vec4 position(double u) const { return position_(u); }
    Vec4 velocity(double u) const { return velocity_(u); }
    int sample_count() const { return samples_; }
    const std::string& name() const { return name_; }

    std::vector<Vec4> sample(int m) const;

  private:
    void validate() const;

    PointFn position_;
    PointFn velocity_;
    int samples_;
    std::string name_;
};

/// Great circle cos(u) e + sin(u) f; f is orthonormalized against e.
ClosedCurve great_circle(const Vec4& e, const Vec4& f, int samples = 256);

/// (p, q) torus knot on the rotation torus of parameter a:
/// (cos a * e^{i p u}, sin a * e^{i q u}); p, q coprime positive integers.
ClosedCurve torus_knot_curve(int p, int q, double a, int samples = 512);

/// The dual great circles (e^{iu}, 0) and (0, e^{iv}); constant distance pi/2.
std::pair<ClosedCurve, ClosedCurve> hopf_pair(int samples = 256);

}  // namespace s3lab
