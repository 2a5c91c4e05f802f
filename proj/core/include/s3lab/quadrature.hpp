// Quadrature on periodic parameter domains plus Gauss-Legendre nodes.
// The trapezoidal rule on a full period is spectrally accurate for smooth
// integrands, which covers every integral in this library.
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace s3lab {

/// Uniform periodic grid on [0, 2pi)^2 with trapezoidal (= midpoint-free
/// rectangle) weights. Integrating the constant 1 gives (2pi)^2 exactly.
struct QuadratureGrid {
    QuadratureGrid(int nu, int nv);
    explicit QuadratureGrid(int n) : QuadratureGrid(n, n) {}

    int n_u;
    int n_v;

    double u(int i) const;
    double v(int j) const;
    double cell_area() const;
};

inline constexpr int kDefaultReportGrid = 256;
inline constexpr int kDefaultTestGrid = 64;

/// Compensated (Neumaier) accumulator; fixed accumulation order makes every
/// reduction bit-stable regardless of how samples were produced.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Trapezoidal integral of row-major samples over the periodic square.
double integrate_periodic(std::span<const double> values, const QuadratureGrid& grid);

/// Row-major samples of f over the grid.
std::vector<double> sample_periodic(const QuadratureGrid& grid,
                                    const std::function<double(double, double)>& f);

struct GaussLegendreRule {
    std::vector<double> nodes;    // in (-1, 1)
    std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1]; cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace s3lab
