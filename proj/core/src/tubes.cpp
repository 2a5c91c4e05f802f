#include "s3lab/tubes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "s3lab/sphere.hpp"

namespace s3lab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

TubeSpec::TubeSpec(SurfaceImmersion s, double r) : surface(std::move(s)), radius(r) {
    if (!(r > 0.0 && r < M_PI / 2.0))
        throw std::invalid_argument("tube radius must lie in (0, pi/2)");
}

double pointwise_focal_distance(double kappa1, double kappa2) {
    auto one = [](double k) { return k == 0.0 ? M_PI / 2.0 : std::atan(1.0 / std::abs(k)); };
    return std::min(one(kappa1), one(kappa2));
}

double curvature_focal_radius(const SurfaceImmersion& S, const QuadratureGrid& grid,
                              double* argmin_u, double* argmin_v, double* max_abs_kappa) {
    double best = M_PI / 2.0, bu = 0.0, bv = 0.0, kmax = 0.0;
    const bool torus = S.topology() == SurfaceTopology::torus;
    for (int i = 0; i < grid.n_u; ++i) {
        const double u = torus ? grid.u(i) : M_PI * (i + 0.5) / grid.n_u;
        for (int j = 0; j < grid.n_v; ++j) {
            const double v = grid.v(j);
            const CurvatureFrame f = curvature_frame(S, u, v);
            const double d = pointwise_focal_distance(f.kappa1, f.kappa2);
            kmax = std::max(kmax, std::max(std::abs(f.kappa1), std::abs(f.kappa2)));
            if (d < best) {
                best = d;
                bu = u;
                bv = v;
            }
        }
    }
    if (argmin_u) *argmin_u = bu;
    if (argmin_v) *argmin_v = bv;
    if (max_abs_kappa) *max_abs_kappa = kmax;
    return best;
}

// ---------------------------------------------------------------------------
// Reach estimation.
//
// Geodesic segments are shot along both unit normals from every base sample
// and truncated at the pointwise curvature focal distance (the min over the
// 5-point index stencil, so same-depth lattice neighbors always exist).
// Sample beads from far-apart bases that land within the collision window are
// screened by expressing their separation in the local lattice frame
// (same-depth neighbor steps plus the along-segment step): a displacement the
// lattice explains is a converging normal family, not a reach violation.
// ---------------------------------------------------------------------------

namespace {

struct ReachGrid {
    int n_u = 0, n_v = 0;
    bool torus = true;
    std::vector<Vec4> point;   // n_u * n_v, row-major (i, j)
    std::vector<Vec4> normal;  // unit surface normal
    std::vector<double> cut5;  // focal truncation (min over 5-point stencil)
    double h = 0.0;            // max adjacent base spacing
};

ReachGrid build_reach_grid(const SurfaceImmersion& S, int resolution) {
    ReachGrid g;
    g.torus = S.topology() == SurfaceTopology::torus;
    const double u_span = g.torus ? kTwoPi : M_PI;

    // Effective lengths of the two parameter directions from the largest
    // derivative seen on a probe lattice (conservative for uneven stretching);
    // the longer direction gets `resolution` samples, the other scales.
    double du_max = 0.0, dv_max = 0.0;
    for (int p = 0; p < 16; ++p) {
        for (int k = 0; k < 48; ++k) {
            const double uu = g.torus ? u_span * k / 48.0 : u_span * (k + 0.5) / 48.0;
            const SurfaceJet J = S.jet(uu, kTwoPi * p / 16.0);
            du_max = std::max(du_max, norm(J.xu));
            dv_max = std::max(dv_max, norm(J.xv));
        }
    }
    const double len_u = du_max * u_span, len_v = dv_max * kTwoPi;
    const double len_max = std::max(len_u, len_v);
    g.n_u = std::max(16, static_cast<int>(std::lround(resolution * len_u / len_max)));
    g.n_v = std::max(16, static_cast<int>(std::lround(resolution * len_v / len_max)));

    const int nu = g.n_u, nv = g.n_v;
    const std::size_t total = static_cast<std::size_t>(nu) * nv;
    g.point.resize(total);
    g.normal.resize(total);
    std::vector<double> cut(total);
    for (int i = 0; i < nu; ++i) {
        const double u = g.torus ? kTwoPi * i / nu : M_PI * (i + 0.5) / nu;
        for (int j = 0; j < nv; ++j) {
            const CurvatureFrame f = curvature_frame(S, u, kTwoPi * j / nv);
            const std::size_t id = static_cast<std::size_t>(i) * nv + j;
            g.point[id] = f.point;
            g.normal[id] = f.normal;
            cut[id] = pointwise_focal_distance(f.kappa1, f.kappa2);
        }
    }
    auto id_of = [nu, nv](int i, int j) {
        i = ((i % nu) + nu) % nu;
        j = ((j % nv) + nv) % nv;
        return static_cast<std::size_t>(i) * nv + j;
    };
    g.cut5.resize(total);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            double c = cut[id_of(i, j)];
            const int iprev = g.torus ? i - 1 : std::max(i - 1, 0);
            const int inext = g.torus ? i + 1 : std::min(i + 1, nu - 1);
            c = std::min(c, cut[id_of(iprev, j)]);
            c = std::min(c, cut[id_of(inext, j)]);
            c = std::min(c, cut[id_of(i, j - 1)]);
            c = std::min(c, cut[id_of(i, j + 1)]);
            g.cut5[id_of(i, j)] = c;
        }
    }
    double h = 0.0;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const Vec4& p = g.point[id_of(i, j)];
            if (g.torus || i + 1 < nu)
                h = std::max(h, dist_s3(p, g.point[id_of(i + 1, j)]));
            h = std::max(h, dist_s3(p, g.point[id_of(i, j + 1)]));
        }
    }
    g.h = h;
    return g;
}

struct Bead {
    Vec4 pos;
    float t;
    std::uint16_t i, j;
    std::int8_t side;  // +1 / -1
};

std::uint64_t cell_key(const Vec4& p, double inv_cell) {
    std::uint64_t key = 0;
    for (int d = 0; d < 4; ++d) {
        const auto c = static_cast<std::uint64_t>((p[d] + 2.0) * inv_cell) & 0xffffu;
        key = (key << 16) | c;
    }
    return key;
}

}  // namespace

ReachEstimate reach_estimate(const SurfaceImmersion& S, const ReachParams& params) {
    if (params.resolution < 16) throw std::invalid_argument("reach resolution must be >= 16");
    const ReachGrid grid = build_reach_grid(S, params.resolution);
    if (grid.h > params.tolerance)
        throw std::invalid_argument("reach grid too coarse: base spacing " +
                                    std::to_string(grid.h) + " exceeds requested tolerance " +
                                    std::to_string(params.tolerance));
    const int nu = grid.n_u, nv = grid.n_v;
    const double dt = 0.5 * grid.h;
    const double r_cap = M_PI / 2.0;

    // All beads up to the focal truncation, hashed once; the reach is the
    // smallest max(t1, t2) over colliding pairs. Shells that have focally
    // collapsed (lattice spacing far below the base spacing) are decimated to
    // ~h/2 metric density so converging families stay near-linear to scan.
    auto pos_at = [&](int i, int j, double sgn, double t) {
        const std::size_t id = static_cast<std::size_t>(((i % nu) + nu) % nu) * nv +
                               (((j % nv) + nv) % nv);
        return combine(std::cos(t), grid.point[id], sgn * std::sin(t), grid.normal[id]);
    };
    std::vector<Bead> beads;
    const int k_max = static_cast<int>(r_cap / dt);
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        for (int k = 1; k <= k_max; ++k) {
            const double t = k * dt;
            const double ct = std::cos(t), st = sgn * std::sin(t);
            for (int i = 0; i < nu; ++i) {
                // Shell spacing along each lattice direction, minimum over a
                // few probes; strides keep the kept beads ~h/2 apart.
                double su = grid.h, sv = grid.h;
                const int inext = grid.torus ? (i + 1) % nu : (i + 1 < nu ? i + 1 : i - 1);
                for (int j = 0; j < nv; j += std::max(1, nv / 8)) {
                    const Vec4 here = pos_at(i, j, sgn, t);
                    su = std::min(su, norm(sub(pos_at(inext, j, sgn, t), here)));
                    sv = std::min(sv, norm(sub(pos_at(i, j + 1, sgn, t), here)));
                }
                const int stride_i =
                    std::max(1, static_cast<int>(0.45 * grid.h / std::max(su, 1e-12)));
                const int stride_j =
                    std::max(1, static_cast<int>(0.45 * grid.h / std::max(sv, 1e-12)));
                if (i % stride_i != 0) continue;
                for (int j = 0; j < nv; j += stride_j) {
                    const std::size_t id = static_cast<std::size_t>(i) * nv + j;
                    if (t > std::min(grid.cut5[id], r_cap)) continue;
                    Bead b;
                    b.t = static_cast<float>(t);
                    b.pos = combine(ct, grid.point[id], st, grid.normal[id]);
                    b.i = static_cast<std::uint16_t>(i);
                    b.j = static_cast<std::uint16_t>(j);
                    b.side = static_cast<std::int8_t>(sgn);
                    beads.push_back(b);
                }
            }
        }
    }

    const double c0 = 0.75 * grid.h;
    const double inv_cell = 1.0 / c0;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> hash;
    hash.reserve(beads.size());
    for (std::uint32_t b = 0; b < beads.size(); ++b) hash[cell_key(beads[b].pos, inv_cell)].push_back(b);

    auto index_gap = [](int a, int b, int period, bool wrap) {
        int d = std::abs(a - b);
        if (wrap) d = std::min(d, period - d);
        return d;
    };

    // Least-squares coordinates of delta in the local lattice frame at bead a.
    auto lattice_explains = [&](const Bead& a, const Vec4& delta) {
        const int i = a.i, j = a.j;
        const int inext = grid.torus ? (i + 1) % nu : (i + 1 < nu ? i + 1 : i - 1);
        const Vec4 here = a.pos;
        const Vec4 eu = sub(pos_at(inext, j, a.side, a.t), here);
        const Vec4 ev = sub(pos_at(i, j + 1, a.side, a.t), here);
        const Vec4 et_step = sub(pos_at(i, j, a.side, a.t + dt), here);
        const double a11 = dot(eu, eu), a12 = dot(eu, ev), a13 = dot(eu, et_step);
        const double a22 = dot(ev, ev), a23 = dot(ev, et_step), a33 = dot(et_step, et_step);
        const double b1 = dot(eu, delta), b2 = dot(ev, delta), b3 = dot(et_step, delta);
        const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                           a13 * (a12 * a23 - a22 * a13);
        if (std::abs(det) < 1e-30) return true;  // degenerate frame: focal pile-up
        const double x1 = (b1 * (a22 * a33 - a23 * a23) - a12 * (b2 * a33 - a23 * b3) +
                           a13 * (b2 * a23 - a22 * b3)) /
                          det;
        const double x2 = (a11 * (b2 * a33 - a23 * b3) - b1 * (a12 * a33 - a23 * a13) +
                           a13 * (a12 * b3 - b2 * a13)) /
                          det;
        const double x3 = (a11 * (a22 * b3 - b2 * a23) - a12 * (a12 * b3 - b2 * a13) +
                           b1 * (a12 * a23 - a22 * a13)) /
                          det;
        return std::max({std::abs(x1), std::abs(x2), std::abs(x3)}) >= 2.5;
    };

    // Forward half of the 3^4 neighborhood: each unordered cell pair once.
    std::vector<std::array<int, 4>> offsets;
    for (int d0 = -1; d0 <= 1; ++d0)
        for (int d1 = -1; d1 <= 1; ++d1)
            for (int d2 = -1; d2 <= 1; ++d2)
                for (int d3 = -1; d3 <= 1; ++d3) {
                    const std::array<int, 4> off{d0, d1, d2, d3};
                    int first = 0;
                    for (int d : off)
                        if (d != 0) {
                            first = d;
                            break;
                        }
                    if (first >= 0) offsets.push_back(off);
                }

    double best = r_cap;
    const double exclusion_radius = 5.0 * grid.h;
    auto test_pair = [&](const Bead& a, const Bead& b) {
        const double pair_r = std::max<double>(a.t, b.t);
        if (pair_r >= best) return;
        if (!params.check_opposite_side && a.side != b.side) return;
        if (std::max(index_gap(a.i, b.i, nu, grid.torus), index_gap(a.j, b.j, nv, true)) <= 4)
            return;
        const Vec4 delta = sub(b.pos, a.pos);
        if (dot(delta, delta) >= c0 * c0) return;
        if (!grid.torus) {
            // Sphere charts have an index seam across the poles; metrically
            // adjacent bases there are lattice continuations, not new sheets.
            const std::size_t ida = static_cast<std::size_t>(a.i) * nv + a.j;
            const std::size_t idb = static_cast<std::size_t>(b.i) * nv + b.j;
            if (dist_s3(grid.point[ida], grid.point[idb]) < exclusion_radius) return;
        }
        // Segments still approaching head-on (each sees the other strictly
        // ahead along its own direction) have not collided; families merging
        // at a focal locus stay in this state up to their truncation.
        const Vec4 dir_a = sub(pos_at(a.i, a.j, a.side, a.t + dt), a.pos);
        const Vec4 dir_b = sub(pos_at(b.i, b.j, b.side, b.t + dt), b.pos);
        if (dot(delta, dir_a) > 0.0 && dot(scale(delta, -1.0), dir_b) > 0.0) return;
        if (lattice_explains(a, delta)) return;
        if (lattice_explains(b, scale(delta, -1.0))) return;
        best = pair_r;
    };

    for (std::uint32_t ai = 0; ai < beads.size(); ++ai) {
        const Bead& a = beads[ai];
        if (a.t >= best) continue;  // cannot improve on the current first collision
        const Vec4& pa = a.pos;
        std::int64_t cell[4];
        for (int d = 0; d < 4; ++d) cell[d] = static_cast<std::int64_t>((pa[d] + 2.0) * inv_cell);
        for (const auto& off : offsets) {
            std::uint64_t key = 0;
            for (int d = 0; d < 4; ++d)
                key = (key << 16) | (static_cast<std::uint64_t>(cell[d] + off[d]) & 0xffffu);
            auto it = hash.find(key);
            if (it == hash.end()) continue;
            const bool self_cell = off[0] == 0 && off[1] == 0 && off[2] == 0 && off[3] == 0;
            for (std::uint32_t bi : it->second) {
                if (self_cell && bi <= ai) continue;
                test_pair(a, beads[bi]);
            }
        }
    }
    return ReachEstimate{best, 0.5 * grid.h + dt};
}

FocalReport focal_radius(const SurfaceImmersion& S, const FocalParams& params) {
    FocalReport rep;
    QuadratureGrid grid(params.curvature_grid, params.curvature_grid);
    rep.curvature_focal = curvature_focal_radius(S, grid, &rep.argmin_u, &rep.argmin_v);
    const ReachEstimate reach = reach_estimate(S, params.reach);
    rep.reach_value = reach.value;
    rep.reach_tolerance = reach.tolerance;
    rep.focal_radius = std::min(rep.curvature_focal, rep.reach_value);
    return rep;
}

TubeVolume tube_volume_numeric(const TubeSpec& spec, const QuadratureGrid& grid, int n_t,
                               std::optional<double> focal_hint) {
    if (n_t < 4) throw std::invalid_argument("tube volume needs at least 4 t-nodes");
    const double r = spec.radius;
    const double focal =
        focal_hint ? *focal_hint : curvature_focal_radius(spec.surface, QuadratureGrid(64, 64));
    const auto& rule = gauss_legendre(n_t);
    const double value = surface_integral(spec.surface, grid, [&](const CurvatureFrame& f) {
        CompensatedSum acc;
        for (int i = 0; i < n_t; ++i) {
            const double t = r * rule.nodes[i];
            const double ct = std::cos(t), st = std::sin(t);
            acc.add(rule.weights[i] * (ct - f.kappa1 * st) * (ct - f.kappa2 * st));
        }
        return acc.value() * r;
    });
    return TubeVolume{value, r > focal + 1e-9};
}

double tube_volume_closed(const TubeSpec& spec, const QuadratureGrid& grid) {
    const double r = spec.radius;
    const double a = area(spec.surface, grid);
    const int chi = spec.surface.topology() == SurfaceTopology::torus ? 0 : 2;
    return std::sin(2.0 * r) * a + kTwoPi * chi * (r - std::sin(r) * std::cos(r));
}

bool ChainReport::all_asserted_hold() const {
    for (const ChainRow& row : rows)
        if (row.asserted && !row.holds) return false;
    return true;
}

ChainReport verify_inequality_chain(const SurfaceImmersion& S, double r,
                                    const QuadratureGrid& grid,
                                    std::optional<double> focal_hint) {
    if (S.topology() != SurfaceTopology::torus)
        throw std::invalid_argument("the inequality chain applies to torus immersions");
    if (!(r > 0.0 && r < M_PI / 2.0))
        throw std::invalid_argument("chain radius must lie in (0, pi/2)");

    ChainReport rep;
    rep.radius = r;
    rep.focal = focal_hint ? *focal_hint : focal_radius(S).focal_radius;
    rep.vacuous = r > rep.focal + 1e-9;

    rep.area = area(S, grid);
    rep.willmore = willmore_energy(S, grid);
    rep.bending = surface_integral(S, grid, [](const CurvatureFrame& f) {
        return 0.5 * (f.kappa1 * f.kappa1 + f.kappa2 * f.kappa2);
    });
    curvature_focal_radius(S, grid, nullptr, nullptr, &rep.max_abs_kappa);
    rep.tube_volume = tube_volume_numeric(TubeSpec(S, r), grid, 32, rep.focal).value;

    const double two_pi_sq = 2.0 * M_PI * M_PI;
    const double cot_r = std::cos(r) / std::sin(r);
    const double sin_2r = std::sin(2.0 * r);
    const bool quarter = r >= M_PI / 4.0 - 1e-9;
    const bool applicable = !rep.vacuous;
    const double slack = 1e-6;

    auto push = [&](std::string id, std::string relation, double lhs, double rhs, bool asserted) {
        rep.rows.push_back(ChainRow{std::move(id), std::move(relation), lhs, rhs, asserted,
                                    lhs <= rhs + slack});
    };
    push("eq1", "vol(B(S,r)) <= 2 pi^2", rep.tube_volume, two_pi_sq, applicable);
    push("eq2", "cot(r) area <= sin(2r) area", cot_r * rep.area, sin_2r * rep.area,
         applicable && quarter);
    push("eq3", "cot(r) area <= 2 pi^2", cot_r * rep.area, two_pi_sq, applicable && quarter);
    push("eq4", "2 pi^2 <= willmore", two_pi_sq, rep.willmore, true);
    push("eq5", "willmore <= bending", rep.willmore, rep.bending, true);
    push("eq6", "2 pi^2 <= cot^2(r) area", two_pi_sq, cot_r * cot_r * rep.area,
         applicable && quarter);
    push("curvature_bound", "max |kappa| <= cot(r)", rep.max_abs_kappa, cot_r, applicable);
    return rep;
}

}  // namespace s3lab
