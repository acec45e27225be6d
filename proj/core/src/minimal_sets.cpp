#include "homflow/keepaway.hpp"
#include "homflow/rat_matrix.hpp"

#include "keepaway_internal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

namespace homflow::keepaway {

namespace {

RatMatrix power_minus_identity(const IntMat& a, int p) {
    RatMatrix m(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = Rat(a[i][j]);
    RatMatrix mp = m.pow(static_cast<unsigned>(p));
    return mp - RatMatrix::identity(2);
}

Int quad_round(const Quad& v) { return quad_floor(v + Quad(Rat(1, 2))); }

std::array<Rat, 2> reduce_rat_mod1(std::array<Rat, 2> v) {
    for (auto& c : v) {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
        c -= Rat(fl);
    }
    return v;
}

std::array<Rat, 2> apply_int_rat(const IntMat& a, const std::array<Rat, 2>& v) {
    return {Rat(a[0][0]) * v[0] + Rat(a[0][1]) * v[1], Rat(a[1][0]) * v[0] + Rat(a[1][1]) * v[1]};
}

// Exactly periodic rational point shadowing the exact sample x with
// A^p x ~ x: solves (A^p - I) y = m for the rounded displacement lattice
// vector m, so A^p y = y + m holds identically.
std::optional<std::array<Rat, 2>> snap_periodic(const ToralHyperbolicSystem& sys,
                                                const TorusPoint& x, int p,
                                                const RatMatrix& ap_minus_i_inv) {
    QVec2 v = x;
    for (int i = 0; i < p; ++i) v = sys.apply(v);
    Quad dx = v.x - x.x, dy = v.y - x.y;
    Int mx = quad_round(dx), my = quad_round(dy);
    RatVec m{Rat(mx), Rat(my)};
    RatVec y = ap_minus_i_inv.apply(m);
    return reduce_rat_mod1({y[0], y[1]});
}

int minimal_period(const IntMat& a, const std::array<Rat, 2>& y, int p) {
    for (int d = 1; d <= p; ++d) {
        if (p % d != 0) continue;
        std::array<Rat, 2> img = y;
        for (int i = 0; i < d; ++i) img = apply_int_rat(a, img);
        img = reduce_rat_mod1(img);
        if (img[0] == y[0] && img[1] == y[1]) return d;
    }
    return p;
}

PointCloud cloud_from_periodic(const ToralHyperbolicSystem& sys, std::array<Rat, 2> y, int period,
                               double proximity) {
    PointCloud cloud;
    cloud.periodic = true;
    cloud.proximity = proximity;
    std::array<Rat, 2> cur = reduce_rat_mod1(y);
    for (int i = 0; i < period; ++i) {
        cloud.rational_orbit.push_back(cur);
        cloud.points.push_back({cur[0].get_d(), cur[1].get_d()});
        cur = reduce_rat_mod1(apply_int_rat(sys.a, cur));
    }
    cloud.period = period;
    cloud.invariance_residual = 0;  // the orbit is exactly invariant
    return cloud;
}

}  // namespace

PointCloud omega_limit_minimal(const ToralHyperbolicSystem& sys, const TorusPoint& q, double eta,
                               long t_obs_applications, const KeepAwayParams& params) {
    long t0 = std::max<long>(1, t_obs_applications / 2);
    double snap = std::max(params.snap_scale, eta);

    // inverse matrices (A^p - I)^{-1} and displacement prefilter scales
    std::vector<RatMatrix> inv;
    std::vector<double> disp_scale;
    for (int p = 1; p <= params.period_cap; ++p) {
        RatMatrix m = power_minus_identity(sys.a, p);
        auto mi = inverse(m);
        if (!mi) throw CertificationError("omega_limit_minimal: A^p - I is singular");
        inv.push_back(*mi);
        double norm = 0;
        for (size_t i = 0; i < 2; ++i) {
            double row = 0;
            for (size_t j = 0; j < 2; ++j) row += std::fabs(m(i, j).get_d());
            norm = std::max(norm, row);
        }
        disp_scale.push_back(norm);
    }

    detail::OrbitCursor cursor(sys, q);
    std::vector<std::array<double, 2>> renders;
    renders.reserve(static_cast<size_t>(t_obs_applications - t0 + 2));
    std::deque<TorusPoint> recent;  // last period_cap+1 exact points

    for (long k = 0; k <= t_obs_applications; ++k) {
        if (k > 0) cursor.step();
        if (k < t0) continue;
        renders.push_back(cursor.shadow());
        recent.push_back(cursor.point());
        if (recent.size() > static_cast<size_t>(params.period_cap) + 1) recent.pop_front();

        for (int p = 1; p <= params.period_cap && static_cast<size_t>(p) < recent.size(); ++p) {
            size_t idx = renders.size() - 1;
            const auto& now = renders[idx];
            const auto& before = renders[idx - static_cast<size_t>(p)];
            if (torus_distance(now, before) > snap * disp_scale[static_cast<size_t>(p - 1)]) continue;
            const TorusPoint& base = recent[recent.size() - 1 - static_cast<size_t>(p)];
            auto y = snap_periodic(sys, base, p, inv[static_cast<size_t>(p - 1)]);
            if (!y) continue;
            double prox = torus_distance(to_doubles(base), {(*y)[0].get_d(), (*y)[1].get_d()});
            if (prox > snap) continue;
            int period = minimal_period(sys.a, *y, p);
            return cloud_from_periodic(sys, *y, period, prox);
        }
    }

    // no periodic shadow at the snap scale: fall back to the closure of a
    // most-recurrent segment, with its measured invariance residual
    PointCloud cloud;
    if (renders.empty()) return cloud;
    size_t stride = std::max<size_t>(1, renders.size() / 512);
    size_t best_idx = 0;
    long best_count = -1;
    for (size_t c = 0; c < renders.size(); c += stride) {
        long count = 0;
        for (size_t j = 0; j < renders.size(); j += stride)
            if (j != c && torus_distance(renders[c], renders[j]) <= eta) ++count;
        if (count > best_count) {
            best_count = count;
            best_idx = c;
        }
    }
    size_t ret = 0;
    for (size_t j = best_idx + 1; j < renders.size(); ++j)
        if (torus_distance(renders[best_idx], renders[j]) <= eta) {
            ret = j;
            break;
        }
    if (ret == 0) {
        cloud.points.push_back(renders[best_idx]);
        cloud.invariance_residual = std::numeric_limits<double>::infinity();
        return cloud;
    }
    size_t len = std::min<size_t>(ret - best_idx, 4000);
    for (size_t j = best_idx; j < best_idx + len; ++j) cloud.points.push_back(renders[j]);
    std::vector<std::array<double, 2>> image;
    for (size_t j = best_idx + 1; j <= best_idx + len && j < renders.size(); ++j)
        image.push_back(renders[j]);
    cloud.invariance_residual = hausdorff_distance(cloud.points, image);
    cloud.proximity = eta;
    return cloud;
}

MinimalSetCatalog enumerate_minimal_sets(const ToralHyperbolicSystem& sys, int count_target,
                                         const KeepAwayParams& params) {
    if (count_target < 1) throw std::invalid_argument("enumerate_minimal_sets: count must be >= 1");
    MinimalSetCatalog cat;

    // the origin is a fixed point of every integer automorphism
    PointCloud seed;
    seed.periodic = true;
    seed.period = 1;
    seed.points.push_back({0.0, 0.0});
    seed.rational_orbit.push_back({Rat(0), Rat(0)});
    cat.sets.push_back(std::move(seed));

    std::mt19937_64 rng(params.seed);
    auto draw_rat = [&rng]() { return make_rat(static_cast<long>(rng() % 1024), 1024); };

    const int budget = params.budget_factor * count_target;
    while (static_cast<int>(cat.sets.size()) < count_target && cat.attempts < budget) {
        ++cat.attempts;
        Window w{draw_rat(), draw_rat(), Rat(std::max(params.window_radius, 0.02))};

        std::vector<TorusPoint> targets;
        for (const auto& s : cat.sets) {
            if (!s.rational_orbit.empty())
                targets.push_back(rational_point(s.rational_orbit[0][0], s.rational_orbit[0][1]));
            else
                targets.push_back(rational_point(make_rat(std::lround(s.points[0][0] * 4096), 4096),
                                                 make_rat(std::lround(s.points[0][1] * 4096), 4096)));
        }

        try {
            KeepAwayParams run_params = params;
            run_params.max_stages = std::min(params.max_stages, 8);
            run_params.t_max = std::min(params.t_max, 200.0);
            KeepAwayResult res = run_keepaway(sys, targets, w, run_params);
            if (!res.trace.validation.ok) continue;

            PointCloud cloud = omega_limit_minimal(sys, res.q, params.eta, params.t_obs, params);
            if (cloud.points.empty()) continue;
            if (cloud.invariance_residual > 2 * params.eta) continue;
            bool separated = true;
            for (const auto& s : cat.sets)
                if (hausdorff_distance(s.points, cloud.points) < params.eps_sep) {
                    separated = false;
                    break;
                }
            if (!separated) continue;
            cat.sets.push_back(std::move(cloud));
        } catch (const std::invalid_argument&) {
            continue;  // window landed on a target orbit or was unusable
        } catch (const CertificationError&) {
            continue;
        }
    }

    cat.complete = static_cast<int>(cat.sets.size()) >= count_target;
    size_t n = cat.sets.size();
    cat.separations.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            double d = hausdorff_distance(cat.sets[i].points, cat.sets[j].points);
            cat.separations[i][j] = d;
            cat.separations[j][i] = d;
        }
    return cat;
}

}  // namespace homflow::keepaway
