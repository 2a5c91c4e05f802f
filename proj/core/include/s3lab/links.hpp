// Distances between compact sets, linking numbers via the Gauss integral,
// the linked-curve distance bound, complement-convexity probes, and maximin
// distance search over Fourier loop families.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "s3lab/curves.hpp"
#include "s3lab/vec.hpp"

namespace s3lab {

/// Two disjoint closed curves with their sampling resolutions.
/// Disjointness (min pairwise sample distance > 1e-4) is validated.
struct CurvePair {
    CurvePair(ClosedCurve curve_a, ClosedCurve curve_b, int samples_a = 512, int samples_b = 512);

    ClosedCurve a, b;
    int m_a, m_b;
};

/// Minimum geodesic distance between two finite sample sets.
double set_distance(std::span<const Vec4> a, std::span<const Vec4> b);

/// Minimum distance between two curves: coarse minimum over the sample grid,
/// optionally refined by projected-gradient descent on the two curve
/// parameters (backtracking halving, stops when the step drops below 1e-10).
double set_distance(const CurvePair& pair, bool refine = true);

/// Gauss linking number: stereographic projection from a pole chosen to
/// maximize clearance over a deterministic 600-point design, then the double
/// integral by the trapezoidal product rule, rounded to the nearest integer.
/// Throws if no pole clears both curves by 0.2 or if the raw integral is
/// farther than 0.1 from an integer.
int linking_number(const CurvePair& pair);

/// Same integral from an explicitly chosen projection pole.
int linking_number(const CurvePair& pair, const Vec4& pole);

struct GehringReport {
    int linking = 0;
    double distance = 0.0;
    bool applicable = false;     // linking != 0
    bool bound_satisfied = true; // distance <= pi/2 + 1e-6 when applicable
    double gap = 0.0;            // pi/2 - distance
};

/// Distance bound check for linked curves: linking != 0 must force
/// distance <= pi/2 (+1e-6 slack).
GehringReport gehring_check(const CurvePair& pair);

struct ConvexityReport {
    bool empty = false;   // no members of the complement found in 1e6 draws
    long draws = 0;
    int pairs_checked = 0;
    int violations = 0;
    double min_margin = 0.0;  // min over probes of d(probe, A) - r
};

/// Probes geodesic convexity of N = S^3 \ B(A, r) for r > pi/2: rejection
/// samples point pairs in N and walks 64 points along each minimizing
/// geodesic, counting exits from N beyond 1e-6 slack.
ConvexityReport complement_convexity_check(std::span<const Vec4> a_samples, double r,
                                           int n_pairs, std::uint64_t seed);

/// Two loops given by truncated Fourier series in ambient 4-space, radially
/// projected to S^3. The flat coefficient layout per loop and coordinate is
/// [a_0, a_1..a_K, b_1..b_K] for a_k cos(kt) + b_k sin(kt).
class FourierLoopFamily {
  public:
    FourierLoopFamily(int order, std::vector<double> coefficients, std::uint64_t seed);

    /// Exact Hopf pair plus a seeded random perturbation of the given
    /// amplitude (max ambient displacement over each loop).
    static FourierLoopFamily perturbed_hopf(std::uint64_t seed, double amplitude, int order = 3);

    /// (p, q) torus knot against the dual axis circle (0, e^{it}).
    static FourierLoopFamily knot_axis(int p, int q, double a);

    int order() const { return order_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& coefficients() const { return coef_; }
    std::vector<double>& coefficients() { return coef_; }

    Vec4 ambient(int loop, double t) const;
    Vec4 ambient_velocity(int loop, double t) const;
    Vec4 position(int loop, double t) const;
    Vec4 velocity(int loop, double t) const;

    /// Ambient norms must stay above 0.1 for the projection to be sane.
    void validate() const;

    ClosedCurve curve(int loop, int samples = 256) const;
    CurvePair pair(int samples = 512) const;

    static int coefficients_per_loop(int order) { return 4 * (2 * order + 1); }

  private:
    int order_;
    std::vector<double> coef_;  // 2 * 4 * (2K+1)
    std::uint64_t seed_;
};

struct SearchConfig {
    double beta_start = 20.0;
    double beta_end = 500.0;
    int stages = 5;
    int max_iters_per_stage = 150;
    double initial_step = 0.05;
    double min_gain = 1e-8;
    int samples = 96;          // per-loop samples for the surrogate objective
    int linking_samples = 256; // per-loop samples for linking re-verification
    std::uint64_t seed = 42;
};

struct TrajectoryRow {
    int iteration;
    double beta;
    double surrogate;
    double true_distance;
    int linking;
};

struct SearchResult {
    double best_distance = 0.0;  // refined set distance of the final pair
    FourierLoopFamily best;
    std::vector<TrajectoryRow> trajectory;
    int iterations = 0;
    int linking = 0;
    std::string stop_reason;
};

/// Ascends a softmin surrogate of the pairwise curve distance,
///   softmin(d; beta) = -(1/beta) log mean exp(-beta d),
/// with beta annealed geometrically from beta_start to beta_end. Steps that
/// change the linking number or decrease the true minimum distance are
/// rejected. Throws if the initial configuration has linking number zero.
SearchResult extremal_search(const FourierLoopFamily& family, const SearchConfig& config = {});

/// CSV trajectory stream: header iteration,beta,surrogate,true_distance,linking.
void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows);

/// Deterministic well-spread design on S^3 (super-Fibonacci spiral).
std::vector<Vec4> sphere_design(int n);

}  // namespace s3lab
