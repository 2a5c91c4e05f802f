#include "s3lab/links.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "s3lab/sphere.hpp"

namespace s3lab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

CurvePair::CurvePair(ClosedCurve curve_a, ClosedCurve curve_b, int samples_a, int samples_b)
    : a(std::move(curve_a)), b(std::move(curve_b)), m_a(samples_a), m_b(samples_b) {
    if (m_a < 16 || m_b < 16) throw std::invalid_argument("curve pair needs >= 16 samples");
    const auto sa = a.sample(std::min(m_a, 256));
    const auto sb = b.sample(std::min(m_b, 256));
    if (set_distance(sa, sb) <= 1e-4)
        throw std::invalid_argument("curves are not disjoint (sample distance <= 1e-4)");
}

double set_distance(std::span<const Vec4> a, std::span<const Vec4> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("set distance of an empty set");
    double best = M_PI;
    for (const Vec4& p : a)
        for (const Vec4& q : b) best = std::min(best, dist_s3(p, q));
    return best;
}

double set_distance(const CurvePair& pair, bool refine) {
    double best = M_PI;
    double bu = 0.0, bv = 0.0;
    const auto sa = pair.a.sample(pair.m_a);
    const auto sb = pair.b.sample(pair.m_b);
    for (int i = 0; i < pair.m_a; ++i)
        for (int j = 0; j < pair.m_b; ++j) {
            const double d = dist_s3(sa[i], sb[j]);
            if (d < best) {
                best = d;
                bu = kTwoPi * i / pair.m_a;
                bv = kTwoPi * j / pair.m_b;
            }
        }
    if (!refine) return best;

    // Projected-gradient descent on the two curve parameters.
    double u = bu, v = bv;
    double f = best;
    double step = kTwoPi / pair.m_a;
    while (step > 1e-10) {
        const Vec4 p = pair.a.position(u), q = pair.b.position(v);
        const double c = clamp_unit(dot(p, q));
        const double s = std::sqrt(std::max(1.0 - c * c, 1e-30));
        const double gu = -dot(pair.a.velocity(u), q) / s;
        const double gv = -dot(p, pair.b.velocity(v)) / s;
        const double gnorm = std::hypot(gu, gv);
        if (gnorm < 1e-14) break;
        double trial = step;
        bool moved = false;
        while (trial > 1e-10) {
            const double nu = u - trial * gu / gnorm;
            const double nv = v - trial * gv / gnorm;
            const double nf = dist_s3(pair.a.position(nu), pair.b.position(nv));
            if (nf < f) {
                u = nu;
                v = nv;
                f = nf;
                moved = true;
                break;
            }
            trial *= 0.5;
        }
        step = moved ? trial * 2.0 : trial;
    }
    return std::min(best, f);
}

std::vector<Vec4> sphere_design(int n) {
    // Super-Fibonacci spiral (Alexa): low-discrepancy deterministic points.
    const double phi = std::sqrt(2.0);
    const double psi = 1.533751168755204288118041;
    std::vector<Vec4> out(n);
    for (int i = 0; i < n; ++i) {
        const double s = (i + 0.5) / n;
        const double r = std::sqrt(s), rr = std::sqrt(1.0 - s);
        const double alpha = kTwoPi * i / phi, beta = kTwoPi * i / psi;
        out[i] = {r * std::sin(alpha), r * std::cos(alpha), rr * std::sin(beta),
                  rr * std::cos(beta)};
    }
    return out;
}

int linking_number(const CurvePair& pair) {
    const auto sa = pair.a.sample(pair.m_a);
    const auto sb = pair.b.sample(pair.m_b);

    // Pole: maximize the minimum clearance over a fixed spherical design.
    const auto design = sphere_design(600);
    double best_clear = -1.0;
    Vec4 pole{0, 0, 0, 1};
    for (const Vec4& cand : design) {
        double clear = M_PI;
        for (const Vec4& p : sa) {
            clear = std::min(clear, dist_s3(cand, p));
            if (clear <= best_clear) break;
        }
        if (clear <= best_clear) continue;
        for (const Vec4& p : sb) {
            clear = std::min(clear, dist_s3(cand, p));
            if (clear <= best_clear) break;
        }
        if (clear > best_clear) {
            best_clear = clear;
            pole = cand;
        }
    }
    if (best_clear <= 0.2)
        throw std::runtime_error("no stereographic pole clears both curves by 0.2 (best " +
                                 std::to_string(best_clear) + ")");
    return linking_number(pair, pole);
}

int linking_number(const CurvePair& pair, const Vec4& pole) {
    StereographicChart chart(SpherePoint::from_vec4(pole));
    auto project_curve = [&](const ClosedCurve& c, int m, std::vector<Vec3>& pts,
                             std::vector<Vec3>& vel) {
        pts.resize(m);
        vel.resize(m);
        for (int i = 0; i < m; ++i) {
            const double t = kTwoPi * i / m;
            const Vec4 x = c.position(t);
            const Vec4 dx = c.velocity(t);
            const SpherePoint sp = SpherePoint::from_vec4(x);
            const auto y = chart.project(sp);
            const auto dy = chart.push_forward(sp, std::vector<double>(dx.begin(), dx.end()));
            pts[i] = {y[0], y[1], y[2]};
            vel[i] = {dy[0], dy[1], dy[2]};
        }
    };
    std::vector<Vec3> ya, dya, yb, dyb;
    project_curve(pair.a, pair.m_a, ya, dya);
    project_curve(pair.b, pair.m_b, yb, dyb);

    double acc = 0.0;
    for (int i = 0; i < pair.m_a; ++i) {
        const Vec3& p = ya[i];
        const Vec3& dp = dya[i];
        double row = 0.0;
        for (int j = 0; j < pair.m_b; ++j) {
            const Vec3 diff = sub(p, yb[j]);
            const double r2 = dot(diff, diff);
            const double r3 = r2 * std::sqrt(r2);
            row += dot(cross(dp, dyb[j]), diff) / r3;
        }
        acc += row;
    }
    const double raw =
        acc * (kTwoPi / pair.m_a) * (kTwoPi / pair.m_b) / (4.0 * M_PI);
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 0.1)
        throw std::runtime_error("Gauss linking integral " + std::to_string(raw) +
                                 " is not near an integer; raise the sampling resolution");
    return static_cast<int>(rounded);
}

GehringReport gehring_check(const CurvePair& pair) {
    GehringReport rep;
    rep.linking = linking_number(pair);
    rep.distance = set_distance(pair, true);
    rep.applicable = rep.linking != 0;
    rep.gap = M_PI / 2.0 - rep.distance;
    rep.bound_satisfied = !rep.applicable || rep.distance <= M_PI / 2.0 + 1e-6;
    return rep;
}

ConvexityReport complement_convexity_check(std::span<const Vec4> a_samples, double r,
                                           int n_pairs, std::uint64_t seed) {
    if (a_samples.empty()) throw std::invalid_argument("convexity check needs a nonempty set");
    if (r <= M_PI / 2.0 + 1e-6)
        throw std::invalid_argument("complement convexity needs r > pi/2");
    const double cos_r = std::cos(r);
    auto margin = [&](const Vec4& x) {
        // d(x, A) - r; positive inside N.
        double max_dot = -1.0;
        for (const Vec4& a : a_samples) max_dot = std::max(max_dot, dot(x, a));
        return std::acos(clamp_unit(max_dot)) - r;
    };
    auto member = [&](const Vec4& x) {
        for (const Vec4& a : a_samples)
            if (dot(x, a) > cos_r) return false;
        return true;
    };

    ConvexityReport rep;
    rep.min_margin = M_PI;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec4> members;
    const long max_draws = 1000000;
    while (static_cast<int>(members.size()) < 2 * n_pairs && rep.draws < max_draws) {
        ++rep.draws;
        Vec4 x{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        const double nn = norm(x);
        if (nn < 1e-8) continue;
        x = scale(x, 1.0 / nn);
        if (member(x)) members.push_back(x);
    }
    if (members.empty()) {
        rep.empty = true;
        rep.min_margin = 0.0;
        return rep;
    }

    for (std::size_t k = 0; k + 1 < members.size(); k += 2) {
        const Vec4& x = members[k];
        const Vec4& y = members[k + 1];
        const double d = dist_s3(x, y);
        if (d > M_PI - 1e-9) continue;  // antipodal pair: geodesic not unique
        const double sd = std::sin(d);
        ++rep.pairs_checked;
        bool violated = false;
        for (int t = 1; t <= 64; ++t) {
            const double tau = static_cast<double>(t) / 65.0;
            const Vec4 w = combine(std::sin((1.0 - tau) * d) / sd, x, std::sin(tau * d) / sd, y);
            const double m = margin(w);
            rep.min_margin = std::min(rep.min_margin, m);
            if (m < -1e-6) violated = true;
        }
        if (violated) ++rep.violations;
    }
    return rep;
}

// FourierLoopFamily -----------------------------------------------------------

FourierLoopFamily::FourierLoopFamily(int order, std::vector<double> coefficients,
                                     std::uint64_t seed)
    : order_(order), coef_(std::move(coefficients)), seed_(seed) {
    if (order_ < 1 || order_ > 16) throw std::invalid_argument("Fourier loop order out of range");
    if (coef_.size() != static_cast<std::size_t>(2 * coefficients_per_loop(order_)))
        throw std::invalid_argument("Fourier loop coefficient vector has the wrong size");
    validate();
}

Vec4 FourierLoopFamily::ambient(int loop, double t) const {
    const int per_coord = 2 * order_ + 1;
    const double* base = coef_.data() + loop * 4 * per_coord;
    Vec4 out{0, 0, 0, 0};
    for (int c = 0; c < 4; ++c) {
        const double* a = base + c * per_coord;
        double x = a[0];
        for (int k = 1; k <= order_; ++k)
            x += a[k] * std::cos(k * t) + a[order_ + k] * std::sin(k * t);
        out[c] = x;
    }
    return out;
}

Vec4 FourierLoopFamily::ambient_velocity(int loop, double t) const {
    const int per_coord = 2 * order_ + 1;
    const double* base = coef_.data() + loop * 4 * per_coord;
    Vec4 out{0, 0, 0, 0};
    for (int c = 0; c < 4; ++c) {
        const double* a = base + c * per_coord;
        double x = 0.0;
        for (int k = 1; k <= order_; ++k)
            x += k * (-a[k] * std::sin(k * t) + a[order_ + k] * std::cos(k * t));
        out[c] = x;
    }
    return out;
}

Vec4 FourierLoopFamily::position(int loop, double t) const {
    return normalized(ambient(loop, t));
}

Vec4 FourierLoopFamily::velocity(int loop, double t) const {
    const Vec4 y = ambient(loop, t);
    const Vec4 dy = ambient_velocity(loop, t);
    const double n2 = dot(y, y);
    const double inv = 1.0 / std::sqrt(n2);
    return combine(inv, dy, -dot(y, dy) * inv / n2, y);
}

void FourierLoopFamily::validate() const {
    for (int loop = 0; loop < 2; ++loop)
        for (int i = 0; i < 256; ++i) {
            const double t = kTwoPi * i / 256;
            if (norm(ambient(loop, t)) <= 0.1)
                throw std::invalid_argument(
                    "Fourier loop ambient norm dropped to <= 0.1; radial projection unsafe");
        }
}

ClosedCurve FourierLoopFamily::curve(int loop, int samples) const {
    FourierLoopFamily copy = *this;
    return ClosedCurve([copy, loop](double t) { return copy.position(loop, t); },
                       [copy, loop](double t) { return copy.velocity(loop, t); }, samples,
                       "fourier_loop_" + std::to_string(loop));
}

CurvePair FourierLoopFamily::pair(int samples) const {
    return CurvePair(curve(0, std::min(samples, 256)), curve(1, std::min(samples, 256)), samples,
                     samples);
}

FourierLoopFamily FourierLoopFamily::perturbed_hopf(std::uint64_t seed, double amplitude,
                                                    int order) {
    const int per_coord = 2 * order + 1;
    const int per_loop = 4 * per_coord;
    std::vector<double> coef(2 * per_loop, 0.0);
    // Hopf pair: (cos t, sin t, 0, 0) and (0, 0, cos t, sin t).
    coef[0 * per_loop + 0 * per_coord + 1] = 1.0;          // loop 0, x0, cos t
    coef[0 * per_loop + 1 * per_coord + order + 1] = 1.0;  // loop 0, x1, sin t
    coef[1 * per_loop + 2 * per_coord + 1] = 1.0;          // loop 1, x2, cos t
    coef[1 * per_loop + 3 * per_coord + order + 1] = 1.0;  // loop 1, x3, sin t

    if (amplitude > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> noise(coef.size());
        for (double& x : noise) x = gauss(rng);
        for (int loop = 0; loop < 2; ++loop) {
            // Scale the loop's noise so its largest ambient displacement is
            // exactly `amplitude`.
            double max_disp = 0.0;
            for (int i = 0; i < 128; ++i) {
                const double t = kTwoPi * i / 128;
                Vec4 p{0, 0, 0, 0};
                for (int c = 0; c < 4; ++c) {
                    const double* a = noise.data() + loop * per_loop + c * per_coord;
                    double x = a[0];
                    for (int k = 1; k <= order; ++k)
                        x += a[k] * std::cos(k * t) + a[order + k] * std::sin(k * t);
                    p[c] = x;
                }
                max_disp = std::max(max_disp, norm(p));
            }
            const double s = max_disp > 0 ? amplitude / max_disp : 0.0;
            for (int i = 0; i < per_loop; ++i) coef[loop * per_loop + i] += s * noise[loop * per_loop + i];
        }
    }
    return FourierLoopFamily(order, std::move(coef), seed);
}

FourierLoopFamily FourierLoopFamily::knot_axis(int p, int q, double a) {
    const int order = std::max(p, q);
    const int per_coord = 2 * order + 1;
    const int per_loop = 4 * per_coord;
    std::vector<double> coef(2 * per_loop, 0.0);
    const double c = std::cos(a), s = std::sin(a);
    coef[0 * per_loop + 0 * per_coord + p] = c;          // cos(pt)
    coef[0 * per_loop + 1 * per_coord + order + p] = c;  // sin(pt)
    coef[0 * per_loop + 2 * per_coord + q] = s;
    coef[0 * per_loop + 3 * per_coord + order + q] = s;
    coef[1 * per_loop + 2 * per_coord + 1] = 1.0;
    coef[1 * per_loop + 3 * per_coord + order + 1] = 1.0;
    return FourierLoopFamily(order, std::move(coef), 0);
}

// Extremal search --------------------------------------------------------------

namespace {

struct Sampler {
    std::vector<Vec4> a, b;
};

Sampler sample_family(const FourierLoopFamily& f, int m) {
    Sampler s;
    s.a.resize(m);
    s.b.resize(m);
    for (int i = 0; i < m; ++i) {
        const double t = kTwoPi * i / m;
        s.a[i] = f.position(0, t);
        s.b[i] = f.position(1, t);
    }
    return s;
}

double coarse_min(const Sampler& s) {
    double best = M_PI;
    for (const Vec4& p : s.a)
        for (const Vec4& q : s.b) best = std::min(best, dist_s3(p, q));
    return best;
}

double softmin(const Sampler& s, double beta) {
    // softmin = dmin - (1/beta) log mean exp(-beta (d - dmin))
    const double dmin = coarse_min(s);
    double acc = 0.0;
    for (const Vec4& p : s.a)
        for (const Vec4& q : s.b) acc += std::exp(-beta * (dist_s3(p, q) - dmin));
    return dmin - std::log(acc / (s.a.size() * s.b.size())) / beta;
}

}  // namespace

SearchResult extremal_search(const FourierLoopFamily& family, const SearchConfig& config) {
    FourierLoopFamily current = family;
    const int init_linking = linking_number(current.pair(config.linking_samples));
    if (init_linking == 0)
        throw std::invalid_argument("extremal search needs a linked starting configuration");

    SearchResult result{0.0, current, {}, 0, init_linking, ""};
    const int n_params = static_cast<int>(current.coefficients().size());
    const double fd_h = 1e-6;

    auto objective = [&](const FourierLoopFamily& f, double beta) {
        return softmin(sample_family(f, config.samples), beta);
    };
    auto true_min = [&](const FourierLoopFamily& f) {
        return coarse_min(sample_family(f, config.samples));
    };

    int iter = 0;
    for (int stage = 0; stage < config.stages; ++stage) {
        const double beta = config.stages == 1
                                ? config.beta_start
                                : config.beta_start * std::pow(config.beta_end / config.beta_start,
                                                               static_cast<double>(stage) /
                                                                   (config.stages - 1));
        double step = config.initial_step;
        double f0 = objective(current, beta);
        double t0 = true_min(current);
        for (int it = 0; it < config.max_iters_per_stage; ++it) {
            ++iter;
            // Central-difference gradient in coefficient space.
            std::vector<double> grad(n_params);
            FourierLoopFamily probe = current;
            double gnorm2 = 0.0;
            for (int k = 0; k < n_params; ++k) {
                const double saved = probe.coefficients()[k];
                probe.coefficients()[k] = saved + fd_h;
                const double fp = objective(probe, beta);
                probe.coefficients()[k] = saved - fd_h;
                const double fm = objective(probe, beta);
                probe.coefficients()[k] = saved;
                grad[k] = (fp - fm) / (2.0 * fd_h);
                gnorm2 += grad[k] * grad[k];
            }
            const double gnorm = std::sqrt(gnorm2);
            result.trajectory.push_back({iter, beta, f0, t0, result.linking});
            if (gnorm < 1e-14) break;

            bool accepted = false;
            while (step > 1e-12) {
                FourierLoopFamily trial = current;
                for (int k = 0; k < n_params; ++k)
                    trial.coefficients()[k] += step * grad[k] / gnorm;
                double f1, t1;
                try {
                    trial.validate();
                    f1 = objective(trial, beta);
                    t1 = true_min(trial);
                } catch (const std::exception&) {
                    step *= 0.5;
                    continue;
                }
                if (f1 > f0 && t1 >= t0 - 1e-9) {
                    int lk;
                    try {
                        lk = linking_number(trial.pair(config.linking_samples));
                    } catch (const std::exception&) {
                        step *= 0.5;
                        continue;
                    }
                    if (lk != result.linking) {
                        step *= 0.5;
                        continue;
                    }
                    const double gain = f1 - f0;
                    current = std::move(trial);
                    f0 = f1;
                    t0 = t1;
                    accepted = true;
                    step = std::min(step * 1.5, config.initial_step);
                    if (gain < config.min_gain) {
                        result.stop_reason = "surrogate gain below threshold";
                        it = config.max_iters_per_stage;  // ends this stage
                    }
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
        }
    }
    if (result.stop_reason.empty()) result.stop_reason = "iteration cap";
    result.best = current;
    result.iterations = iter;
    result.best_distance = set_distance(current.pair(4 * config.samples), true);
    return result;
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("cannot open trajectory file '" + path + "'");
    std::fprintf(fp, "iteration,beta,surrogate,true_distance,linking\n");
    for (const TrajectoryRow& r : rows)
        std::fprintf(fp, "%d,%.17g,%.17g,%.17g,%d\n", r.iteration, r.beta, r.surrogate,
                     r.true_distance, r.linking);
    std::fclose(fp);
}

}  // namespace s3lab
