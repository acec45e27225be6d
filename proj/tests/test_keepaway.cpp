#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homflow/keepaway.hpp"

#include <cmath>
#include <set>

using namespace homflow;
using namespace homflow::keepaway;

namespace {

IntMat cat_map() { return {{Int(2), Int(1)}, {Int(1), Int(1)}}; }

Rat rr(long n, long d = 1) { return make_rat(n, d); }

// Brute-force oracle: all rational points with denominator <= max_den whose
// orbit has period exactly p. Independent of the library's snap path.
std::set<std::pair<std::pair<long, long>, long>> periodic_orbit_oracle(const IntMat& a, int p,
                                                                       long max_den) {
    std::set<std::pair<std::pair<long, long>, long>> found;  // ((num_x, num_y), den)
    for (long den = 1; den <= max_den; ++den) {
        for (long nx = 0; nx < den; ++nx)
            for (long ny = 0; ny < den; ++ny) {
                Rat x(nx, den), y(ny, den);
                x.canonicalize();
                y.canonicalize();
                Rat cx = x, cy = y;
                bool periodic = true;
                for (int i = 0; i < p; ++i) {
                    Rat nxt_x = Rat(a[0][0]) * cx + Rat(a[0][1]) * cy;
                    Rat nxt_y = Rat(a[1][0]) * cx + Rat(a[1][1]) * cy;
                    auto frac = [](Rat v) {
                        Int fl;
                        mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
                        return v - Rat(fl);
                    };
                    cx = frac(nxt_x);
                    cy = frac(nxt_y);
                }
                periodic = (cx == x && cy == y);
                if (periodic) {
                    Int common_den;
                    mpz_lcm(common_den.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
                    Rat sx = Rat(x * Rat(common_den)), sy = Rat(y * Rat(common_den));
                    found.insert({{sx.get_num().get_si(), sy.get_num().get_si()},
                                  common_den.get_si()});
                }
            }
    }
    return found;
}

}  // namespace

TEST_CASE("build_system on the cat map") {
    auto sys = build_system(cat_map());
    CHECK(sys.lambda == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-12));
    CHECK(sys.t_unit == doctest::Approx(std::log(4.0) / std::log((3 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
    CHECK(sys.steps_per_unit == 2);
    CHECK(sys.disc == 5);
    // exact eigen relations: A e_u = lambda_u e_u
    QVec2 img = sys.apply(sys.e_u);
    CHECK(img.x == sys.lambda_u * sys.e_u.x);
    CHECK(img.y == sys.lambda_u * sys.e_u.y);
    // coordinate functionals invert the basis
    CHECK(sys.u_coord(sys.e_u) == Quad(rr(1)));
    CHECK(sys.u_coord(sys.e_s) == Quad(rr(0)));
    CHECK(sys.s_coord(sys.e_s) == Quad(rr(1)));
    // symmetric matrix: orthogonal eigenbasis
    Quad dot = sys.e_u.x * sys.e_s.x + sys.e_u.y * sys.e_s.y;
    CHECK(quad_sign(dot) == 0);
}

TEST_CASE("build_system rejects non-hyperbolic and non-unimodular input") {
    CHECK_THROWS_WITH_AS(build_system({{Int(1), Int(1)}, {Int(0), Int(1)}}),
                         doctest::Contains("not hyperbolic"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_system({{Int(0), Int(1)}, {Int(-1), Int(-1)}}),
                         doctest::Contains("not hyperbolic"), std::invalid_argument);
    CHECK_THROWS_AS(build_system({{Int(2), Int(0)}, {Int(0), Int(2)}}), std::invalid_argument);
}

TEST_CASE("build_system handles negative-trace and det=-1 matrices") {
    auto fib = build_system({{Int(0), Int(1)}, {Int(1), Int(1)}});  // det -1
    CHECK(fib.lambda == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    auto neg = build_system({{Int(-2), Int(-1)}, {Int(-1), Int(-1)}});
    CHECK(neg.lambda == doctest::Approx((3 + std::sqrt(5.0)) / 2));
    CHECK(quad_sign(neg.lambda_u) < 0);
    // expansion certificates still work with signed eigenvalues
    CHECK(quad_pow(neg.lambda_u_abs, 2) >= Quad(rr(4)));
}

TEST_CASE("discs, boxes and membership") {
    auto sys = build_system(cat_map());
    auto p = rational_point(rr(1, 4), rr(1, 3));
    CHECK_THROWS_AS(leaf_disc(sys, p, rr(1, 2)), std::invalid_argument);  // beyond 1/12

    auto box = v_neighborhood(sys, p, rr(1, 100), rr(1, 50));
    CHECK(contains(sys, box, p));
    // a point displaced along the leaf inside/outside the box
    TorusPoint near = reduce_mod1({p.x + Quad(rr(1, 60)) * sys.e_u.x, p.y + Quad(rr(1, 60)) * sys.e_u.y});
    TorusPoint far = reduce_mod1({p.x + Quad(rr(1, 10)) * sys.e_u.x, p.y + Quad(rr(1, 10)) * sys.e_u.y});
    CHECK(contains(sys, box, near));
    CHECK_FALSE(contains(sys, box, far));
    // wrap-around: membership is a torus statement
    TorusPoint wrapped = reduce_mod1({p.x + Quad(rr(1)) + Quad(rr(1, 60)) * sys.e_u.x,
                                      p.y + Quad(rr(2)) + Quad(rr(1, 60)) * sys.e_u.y});
    CHECK(contains(sys, box, wrapped));

    // delta = 0 collapses the box onto the leaf disc
    auto leaf_only = v_neighborhood(sys, p, rr(0), rr(1, 50));
    CHECK(contains(sys, leaf_only, near));
    TorusPoint off_leaf = reduce_mod1({p.x + Quad(rr(1, 400)) * sys.e_s.x, p.y + Quad(rr(1, 400)) * sys.e_s.y});
    CHECK_FALSE(contains(sys, leaf_only, off_leaf));
    CHECK(contains(sys, box, off_leaf));
}

TEST_CASE("choose_constants on the fixed point") {
    auto sys = build_system(cat_map());
    std::vector<TorusPoint> targets{rational_point(rr(0), rr(0))};
    Window w{rr(3, 10), rr(7, 10), rr(1, 10)};
    auto consts = choose_constants(sys, targets, w);
    CHECK(consts.r <= rr(1, 40));  // succeeds by r = 0.025 per the shrink schedule
    CHECK(consts.r >= rr(1, 2000));
    CHECK(consts.delta <= consts.r);
    CHECK(consts.margin > 0);

    // window so small that the floor is reached
    Window tiny{rr(0), rr(0), rr(1, 2000000)};
    CHECK_THROWS_AS(choose_constants(sys, targets, tiny), std::invalid_argument);
}

TEST_CASE("choose_constants rejects same-orbit targets") {
    auto sys = build_system(cat_map());
    TorusPoint p = rational_point(rr(4, 5), rr(3, 5));
    TorusPoint q = reduce_mod1(sys.apply(p));
    Window w{rr(3, 10), rr(7, 10), rr(1, 10)};
    CHECK_THROWS_WITH_AS(choose_constants(sys, {p, q}, w), doctest::Contains("same orbit"),
                         std::invalid_argument);
}

TEST_CASE("first_hit_time: no targets means no hit") {
    auto sys = build_system(cat_map());
    auto res = first_hit_time(sys, rational_point(rr(1, 3), rr(1, 7)), rr(1, 100), rr(1, 400), {}, 1000);
    CHECK_FALSE(res.hit);
}

TEST_CASE("first_hit_time finds the fixed-point box and respects the time floor") {
    auto sys = build_system(cat_map());
    std::vector<TorusPoint> targets{rational_point(rr(0), rr(0))};
    Window w{rr(3, 10), rr(7, 10), rr(1, 10)};
    auto consts = choose_constants(sys, targets, w);
    auto res = first_hit_time(sys, consts.x0, consts.r, consts.delta, targets, 500000);
    REQUIRE(res.hit);
    CHECK(res.applications >= sys.steps_per_unit);  // tau >= 1 rescaled unit
}

TEST_CASE("keepaway_step geometry") {
    auto sys = build_system(cat_map());
    Rat r(1, 100), delta(1, 400);
    TorusPoint target = rational_point(rr(1, 2), rr(1, 2));

    // place x_hat on the target transversal displaced by sigma along the leaf
    auto place = [&](const Rat& sigma, const Rat& s_off) {
        return reduce_mod1({target.x + Quad(sigma) * sys.e_u.x + Quad(s_off) * sys.e_s.x,
                            target.y + Quad(sigma) * sys.e_u.y + Quad(s_off) * sys.e_s.y});
    };

    // sigma = 2r: x_next lands at +3r from the crossing, r beyond x_hat
    auto out = keepaway_step(sys, place(rr(2) * r, rr(1, 800)), target, r, delta);
    CHECK(out.annulus_certified);
    CHECK(quad_to_double(out.u_offset) == doctest::Approx(r.get_d()));
    CHECK(quad_to_double(out.sigma) == doctest::Approx(2 * r.get_d()));

    // sigma = 0 (x_hat on the transversal): tie-break follows positive orientation
    auto tie = keepaway_step(sys, place(rr(0), rr(0)), target, r, delta);
    CHECK(quad_to_double(tie.u_offset) == doctest::Approx(3 * r.get_d()));

    // sigma < 0 goes the other way
    auto neg = keepaway_step(sys, place(rr(-1) * r, rr(0)), target, r, delta);
    CHECK(quad_to_double(neg.u_offset) == doctest::Approx(-2 * r.get_d()));

    // a point too far from the transversal has no crossing
    CHECK_THROWS_AS(keepaway_step(sys, place(rr(3) * r, rr(0)), target, r, delta), CertificationError);
}

TEST_CASE("run_keepaway: no targets returns the seed with infinite epsilon") {
    auto sys = build_system(cat_map());
    Window w{rr(3, 10), rr(7, 10), rr(1, 10)};
    auto res = run_keepaway(sys, {}, w, {});
    CHECK(std::isinf(res.epsilon));
    CHECK(res.trace.validation.ok);
    CHECK(to_doubles(res.q)[0] == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("run_keepaway avoids the fixed point with certified trace invariants") {
    auto sys = build_system(cat_map());
    std::vector<TorusPoint> targets{rational_point(rr(0), rr(0))};
    Window w{rr(3, 10), rr(7, 10), rr(1, 10)};
    KeepAwayParams params;
    params.max_stages = 6;
    params.t_max = 100;
    auto res = run_keepaway(sys, targets, w, params);
    REQUIRE_FALSE(res.trace.stages.empty());
    CHECK(res.trace.validation.ok);
    CHECK(res.epsilon > 0);
    double t_total = 0;
    double prev_half = res.trace.r.get_d();
    for (size_t n = 0; n < res.trace.stages.size(); ++n) {
        const auto& st = res.trace.stages[n];
        CHECK(st.tau_rescaled >= 1.0);  // every stage runs at least one unit
        CHECK(st.containment_certified);
        CHECK(st.annulus_certified);
        // interval lengths contract at least by 4 per stage
        CHECK(st.interval_half_length <= prev_half / 4 * (1 + 1e-12));
        prev_half = st.interval_half_length;
        t_total += st.tau_rescaled;
    }
    CHECK(res.trace.validation.min_distance[0] >= res.epsilon);
    CHECK(t_total > 0);
}

TEST_CASE("omega_limit_minimal on exact periodic seeds") {
    auto sys = build_system(cat_map());
    // fixed point
    auto cloud = omega_limit_minimal(sys, rational_point(rr(0), rr(0)), 1e-3, 600, {});
    REQUIRE(cloud.periodic);
    CHECK(cloud.period == 1);
    CHECK(cloud.invariance_residual == 0);

    // the period-2 orbit through (4/5, 3/5)
    auto cloud2 = omega_limit_minimal(sys, rational_point(rr(4, 5), rr(3, 5)), 1e-3, 600, {});
    REQUIRE(cloud2.periodic);
    CHECK(cloud2.period == 2);
    REQUIRE(cloud2.rational_orbit.size() == 2);
    CHECK(cloud2.invariance_residual == 0);

    // period-3 orbit through (3/4, 1/2)
    auto cloud3 = omega_limit_minimal(sys, rational_point(rr(3, 4), rr(1, 2)), 1e-3, 600, {});
    REQUIRE(cloud3.periodic);
    CHECK(cloud3.period == 3);
}

TEST_CASE("periodic-point oracle sanity: counts per period") {
    // |det(A^p - I)| points of period dividing p
    auto pts1 = periodic_orbit_oracle(cat_map(), 1, 16);
    CHECK(pts1.size() == 1);  // only the origin
    auto pts2 = periodic_orbit_oracle(cat_map(), 2, 16);
    CHECK(pts2.size() == 5);
    auto pts3 = periodic_orbit_oracle(cat_map(), 3, 20);
    CHECK(pts3.size() == 16);
}

TEST_CASE("enumerate_minimal_sets produces separated invariant sets matching the oracle") {
    auto sys = build_system(cat_map());
    KeepAwayParams params;
    params.seed = 12;
    params.t_obs = 8000;
    auto cat = enumerate_minimal_sets(sys, 3, params);
    REQUIRE(static_cast<int>(cat.sets.size()) >= 3);
    for (size_t i = 0; i < cat.sets.size(); ++i)
        for (size_t j = i + 1; j < cat.sets.size(); ++j) CHECK(cat.separations[i][j] >= params.eps_sep);
    // every periodic member matches the brute-force oracle
    for (const auto& s : cat.sets) {
        if (!s.periodic) continue;
        CHECK(s.invariance_residual == 0);
        auto oracle = periodic_orbit_oracle(cat_map(), s.period, 50);
        for (const auto& pt : s.rational_orbit) {
            Int den;
            mpz_lcm(den.get_mpz_t(), pt[0].get_den_mpz_t(), pt[1].get_den_mpz_t());
            Rat sx = Rat(pt[0] * Rat(den)), sy = Rat(pt[1] * Rat(den));
            auto key = std::make_pair(std::make_pair(sx.get_num().get_si(), sy.get_num().get_si()),
                                      den.get_si());
            CHECK(oracle.count(key) == 1);
        }
    }
}

TEST_CASE("expansion invariant: leaf vectors stretch by 4 per rescaled unit") {
    auto sys = build_system(cat_map());
    for (long k : {2L, 5L, 9L, 20L}) {
        double expansion = std::pow(sys.lambda, double(k));
        double expected = std::pow(4.0, sys.rescaled(k));
        CHECK(expansion == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("suspension mode carries the same rescaled clock") {
    auto sys = build_system(cat_map(), SystemMode::Suspension);
    CHECK(sys.mode == SystemMode::Suspension);
    CHECK(sys.rescaled(sys.steps_per_unit) >= 1.0);
    std::vector<TorusPoint> targets{rational_point(rr(0), rr(0))};
    Window w{rr(3, 10), rr(7, 10), rr(1, 10)};
    KeepAwayParams params;
    params.max_stages = 3;
    params.t_max = 50;
    auto res = run_keepaway(sys, targets, w, params);
    CHECK(res.trace.validation.ok);
}
