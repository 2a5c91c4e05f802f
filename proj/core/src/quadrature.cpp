#include "s3lab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace s3lab {

QuadratureGrid::QuadratureGrid(int nu, int nv) : n_u(nu), n_v(nv) {
    if (nu < 8 || nv < 8)
        throw std::invalid_argument("quadrature grid needs at least 8 samples per direction");
}

double QuadratureGrid::u(int i) const { return 2.0 * M_PI * i / n_u; }
double QuadratureGrid::v(int j) const { return 2.0 * M_PI * j / n_v; }
double QuadratureGrid::cell_area() const { return (2.0 * M_PI / n_u) * (2.0 * M_PI / n_v); }

double integrate_periodic(std::span<const double> values, const QuadratureGrid& grid) {
    if (values.size() != static_cast<std::size_t>(grid.n_u) * static_cast<std::size_t>(grid.n_v))
        throw std::invalid_argument("sample count " + std::to_string(values.size()) +
                                    " does not match grid " + std::to_string(grid.n_u) + "x" +
                                    std::to_string(grid.n_v));
    CompensatedSum acc;
    for (double x : values) acc.add(x);
    return acc.value() * (2.0 * M_PI / grid.n_u) * (2.0 * M_PI / grid.n_v);
}

std::vector<double> sample_periodic(const QuadratureGrid& grid,
                                    const std::function<double(double, double)>& f) {
    std::vector<double> out(static_cast<std::size_t>(grid.n_u) * grid.n_v);
    std::size_t k = 0;
    for (int i = 0; i < grid.n_u; ++i)
        for (int j = 0; j < grid.n_v; ++j) out[k++] = f(grid.u(i), grid.v(j));
    return out;
}

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p1 = 1.0, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
    }
    p = p1;
    dp = n * (x * p1 - p2) / (x * x - 1.0);
}

GaussLegendreRule compute_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration from the Chebyshev initial guess; converges in a handful
    // of steps for any practical n.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    CompensatedSum acc;
    for (int i = 0; i < n; ++i) acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    return acc.value() * half;
}

}  // namespace s3lab
