#include "homflow/keepaway.hpp"

#include "keepaway_internal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace homflow::keepaway {

namespace detail {

long norm_inf(const IntMat& m) {
    long best = 0;
    for (const auto& row : m) {
        Int acc(0);
        for (const auto& x : row) acc += abs(x);
        best = std::max(best, static_cast<long>(acc.get_si()));
    }
    return best;
}

namespace {

// Integer translates worth testing for a (u,s)-condition with the given
// extents; bounds come from doubles with slack, exactness is the caller's.
std::vector<std::array<long, 2>> lattice_candidates(const QVec2& offset, double u_bound, double s_bound,
                                                    const ToralHyperbolicSystem& sys) {
    double ox = quad_to_double(offset.x), oy = quad_to_double(offset.y);
    auto ext = [&](double eu, double es) {
        return u_bound * std::fabs(eu) + s_bound * std::fabs(es) + 1e-6;
    };
    double ex = ext(sys.unstable_basis[0][0], sys.stable_basis[0][0]);
    double ey = ext(sys.unstable_basis[0][1], sys.stable_basis[0][1]);
    std::vector<std::array<long, 2>> out;
    long x_lo = static_cast<long>(std::floor(ox - ex)), x_hi = static_cast<long>(std::ceil(ox + ex));
    long y_lo = static_cast<long>(std::floor(oy - ey)), y_hi = static_cast<long>(std::ceil(oy + ey));
    for (long mx = x_lo; mx <= x_hi; ++mx)
        for (long my = y_lo; my <= y_hi; ++my) out.push_back({mx, my});
    return out;
}

}  // namespace

MeetResult annulus_box_meet(const ToralHyperbolicSystem& sys, const QVec2& c1, const Quad& u_lo,
                            const Quad& u_hi, const Quad& s_a, const QVec2& c2, const Quad& u_b,
                            const Quad& s_b) {
    MeetResult res;
    QVec2 off = c1 - c2;
    Quad u_sum_hi = u_hi + u_b;
    Quad u_sum_lo = u_lo - u_b;  // negative collapses the annulus test to a box test
    Quad s_sum = s_a + s_b;
    double bound_u = quad_to_double(u_sum_hi) + 1e-9;
    double bound_s = quad_to_double(s_sum) + 1e-9;
    for (const auto& m : lattice_candidates(off, bound_u, bound_s, sys)) {
        QVec2 shifted{off.x - Quad(Rat(m[0])), off.y - Quad(Rat(m[1]))};
        Quad du = quad_abs(sys.u_coord(shifted));
        Quad ds = quad_abs(sys.s_coord(shifted));
        bool u_ok = du <= u_sum_hi && (quad_sign(u_sum_lo) <= 0 || du >= u_sum_lo);
        bool s_ok = ds <= s_sum;
        if (u_ok && s_ok) {
            res.meets = true;
            res.lattice = {Int(m[0]), Int(m[1])};
            return res;
        }
        double u_escape = std::max(quad_to_double(du - u_sum_hi),
                                   quad_sign(u_sum_lo) > 0 ? quad_to_double(u_sum_lo - du) : -1e308);
        double s_escape = quad_to_double(ds - s_sum);
        res.margin = std::min(res.margin, std::max(u_escape, s_escape));
    }
    return res;
}

ExactHit hit_test(const ToralHyperbolicSystem& sys, const TorusPoint& x,
                  const std::array<double, 2>& xd, double err, const std::vector<TorusPoint>& targets,
                  const std::vector<std::array<double, 2>>& targets_d, const Rat& r, const Rat& delta) {
    ExactHit out;
    double u2r = 2 * r.get_d(), del = delta.get_d();
    double urx = quad_to_double(sys.u_row.x), ury = quad_to_double(sys.u_row.y);
    double srx = quad_to_double(sys.s_row.x), sry = quad_to_double(sys.s_row.y);
    double slack = 8 * err + 1e-11;
    for (size_t i = 0; i < targets.size(); ++i) {
        double ox = xd[0] - targets_d[i][0], oy = xd[1] - targets_d[i][1];
        for (long mx = -1; mx <= 1; ++mx)
            for (long my = -1; my <= 1; ++my) {
                double rx = ox - double(mx), ry = oy - double(my);
                double ud = urx * rx + ury * ry;
                double sd = srx * rx + sry * ry;
                if (std::fabs(ud) > u2r + slack || std::fabs(sd) > del + slack) continue;
                QVec2 shifted{x.x - targets[i].x - Quad(Rat(mx)), x.y - targets[i].y - Quad(Rat(my))};
                Quad u_exact = sys.u_coord(shifted), s_exact = sys.s_coord(shifted);
                if (quad_abs(u_exact) <= Quad(2 * r) && quad_abs(s_exact) <= Quad(delta)) {
                    out.hit = true;
                    out.target = i;
                    out.lattice = {Int(mx), Int(my)};
                    out.sigma = u_exact;
                    out.s_off = s_exact;
                    return out;
                }
            }
    }
    return out;
}

}  // namespace detail

namespace {

Rat rat_of(const Int& z) { return Rat(z); }

Rat snap_rat(double v, long grid) { return make_rat(std::lround(v * double(grid)), grid); }

}  // namespace

QVec2 ToralHyperbolicSystem::apply(const QVec2& v) const {
    return {Quad(rat_of(a[0][0])) * v.x + Quad(rat_of(a[0][1])) * v.y,
            Quad(rat_of(a[1][0])) * v.x + Quad(rat_of(a[1][1])) * v.y};
}

QVec2 ToralHyperbolicSystem::apply_inv(const QVec2& v) const {
    return {Quad(rat_of(a_inv[0][0])) * v.x + Quad(rat_of(a_inv[0][1])) * v.y,
            Quad(rat_of(a_inv[1][0])) * v.x + Quad(rat_of(a_inv[1][1])) * v.y};
}

Rat ToralHyperbolicSystem::radius_cap() const {
    long n = std::max(detail::norm_inf(a), 1L);
    return Rat(1, 4 * n);
}

ToralHyperbolicSystem build_system(const IntMat& a, SystemMode mode) {
    if (a.size() != 2 || a[0].size() != 2 || a[1].size() != 2)
        throw std::invalid_argument(
            "build_system: exact keep-away geometry requires a 2x2 integer matrix");
    Int det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (det != 1 && det != -1) throw std::invalid_argument("build_system: |det A| must be 1");
    Int tr = a[0][0] + a[1][1];

    // char(A) = x^2 - tr x + det; the unit-circle root count decides hyperbolicity exactly
    RatPoly chi({Rat(det), Rat(-tr), Rat(1)});
    int circle = count_unit_circle_roots(chi);
    if (circle > 0) {
        std::ostringstream os;
        os << "build_system: matrix is not hyperbolic (" << circle
           << " eigenvalue(s) on the unit circle)";
        throw std::invalid_argument(os.str());
    }

    ToralHyperbolicSystem sys;
    sys.a = a;
    sys.mode = mode;
    sys.a_inv = {{det * a[1][1], -det * a[0][1]}, {-det * a[1][0], det * a[0][0]}};

    Int disc_z = tr * tr - Int(4) * det;
    if (disc_z <= 0 || mpz_perfect_square_p(disc_z.get_mpz_t()))
        throw CertificationError("build_system: hyperbolic with |det|=1 forces a nonsquare discriminant");
    sys.disc = static_cast<long>(disc_z.get_si());

    // the larger-modulus eigenvalue carries the sign of the trace
    int sgn_tr = tr > 0 ? 1 : -1;
    Rat half_tr(tr);
    half_tr /= 2;
    sys.lambda_u = Quad(half_tr, Rat(sgn_tr, 2), sys.disc);
    sys.lambda_s = Quad(Rat(det)) / sys.lambda_u;
    sys.lambda_u_abs = quad_abs(sys.lambda_u);
    sys.lambda = quad_to_double(sys.lambda_u_abs);
    sys.t_unit = std::log(4.0) / std::log(sys.lambda);
    sys.steps_per_unit = static_cast<long>(std::ceil(sys.t_unit - 1e-12));

    auto eigvec = [&](const Quad& lam) -> QVec2 {
        if (a[0][1] != 0) return {Quad(rat_of(a[0][1])), lam - Quad(rat_of(a[0][0]))};
        if (a[1][0] != 0) return {lam - Quad(rat_of(a[1][1])), Quad(rat_of(a[1][0]))};
        throw CertificationError("build_system: triangular hyperbolic matrix cannot have |det|=1");
    };
    auto normalize = [&](QVec2 v) -> QVec2 {
        int sx = quad_sign(v.x);
        if (sx < 0 || (sx == 0 && quad_sign(v.y) < 0)) v = {-v.x, -v.y};
        double nx = quad_to_double(v.x), ny = quad_to_double(v.y);
        Rat scale(1.0 / std::sqrt(nx * nx + ny * ny));
        return {Quad(scale) * v.x, Quad(scale) * v.y};
    };
    sys.e_u = normalize(eigvec(sys.lambda_u));
    sys.e_s = normalize(eigvec(sys.lambda_s));

    Quad det_b = sys.e_u.x * sys.e_s.y - sys.e_s.x * sys.e_u.y;
    if (quad_sign(det_b) == 0) throw CertificationError("build_system: eigenbasis is singular");
    sys.u_row = {sys.e_s.y / det_b, -(sys.e_s.x / det_b)};
    sys.s_row = {-(sys.e_u.y / det_b), sys.e_u.x / det_b};

    sys.unstable_basis[0] = {quad_to_double(sys.e_u.x), quad_to_double(sys.e_u.y)};
    sys.stable_basis[0] = {quad_to_double(sys.e_s.x), quad_to_double(sys.e_s.y)};
    return sys;
}

TorusPoint reduce_mod1(const QVec2& v) {
    QVec2 out = v;
    out.x = out.x - Quad(Rat(quad_floor(out.x)));
    out.y = out.y - Quad(Rat(quad_floor(out.y)));
    return out;
}

TorusPoint rational_point(const Rat& x, const Rat& y) { return reduce_mod1({Quad(x), Quad(y)}); }

std::array<double, 2> to_doubles(const TorusPoint& p) {
    return {quad_to_double(p.x), quad_to_double(p.y)};
}

double torus_distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    auto wrap = [](double t) {
        t = std::fmod(std::fabs(t), 1.0);
        return std::min(t, 1.0 - t);
    };
    double dx = wrap(a[0] - b[0]), dy = wrap(a[1] - b[1]);
    return std::sqrt(dx * dx + dy * dy);
}

LeafDisc leaf_disc(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& rho) {
    if (rho <= 0 || rho > sys.radius_cap())
        throw std::invalid_argument("leaf_disc: radius outside the embedded-disc scale");
    return {x, rho};
}

TransversalDisc transversal_disc(const ToralHyperbolicSystem& sys, const TorusPoint& x,
                                 const Rat& delta) {
    if (delta < 0 || delta > sys.radius_cap())
        throw std::invalid_argument("transversal_disc: radius outside the embedded-disc scale");
    return {x, delta};
}

VBox v_neighborhood(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& delta,
                    const Rat& rho) {
    if (rho <= 0 || rho > sys.radius_cap() || delta < 0 || delta > sys.radius_cap())
        throw std::invalid_argument("v_neighborhood: radii outside the embedded-disc scale");
    return {x, Quad(rho), Quad(delta)};
}

bool contains(const ToralHyperbolicSystem& sys, const VBox& box, const TorusPoint& p) {
    auto res = detail::annulus_box_meet(sys, p, Quad(Rat(0)), Quad(Rat(0)), Quad(Rat(0)), box.center,
                                        box.u_half, box.s_half);
    return res.meets;
}

HitResult first_hit_time(const ToralHyperbolicSystem& sys, const TorusPoint& x, const Rat& r,
                         const Rat& delta, const std::vector<TorusPoint>& targets,
                         long cap_applications) {
    HitResult res;
    if (targets.empty()) return res;
    detail::OrbitCursor cursor(sys, x);
    std::vector<std::array<double, 2>> targets_d;
    for (const auto& p : targets) targets_d.push_back(to_doubles(p));
    for (long k = 1; k <= cap_applications; ++k) {
        cursor.step();
        auto hit = detail::hit_test(sys, cursor.point(), cursor.shadow(), cursor.shadow_error(),
                                    targets, targets_d, r, delta);
        if (hit.hit) {
            res.hit = true;
            res.applications = k;
            res.target = hit.target;
            res.lattice = hit.lattice;
            return res;
        }
    }
    return res;
}

StepOutcome keepaway_step(const ToralHyperbolicSystem& sys, const TorusPoint& x_hat,
                          const TorusPoint& target, const Rat& r, const Rat& delta) {
    // locate the transversal crossing z: the unique translate with
    // |u| <= 2r, |s| <= delta; zero or several translates signal radii
    // beyond the transversality scale
    QVec2 off = x_hat - target;
    int found = 0;
    Quad sigma, s_off;
    IntVec lattice;
    for (long mx = -2; mx <= 2; ++mx)
        for (long my = -2; my <= 2; ++my) {
            QVec2 shifted{off.x - Quad(Rat(mx)), off.y - Quad(Rat(my))};
            Quad u = sys.u_coord(shifted), s = sys.s_coord(shifted);
            if (quad_abs(u) <= Quad(2 * r) && quad_abs(s) <= Quad(delta)) {
                ++found;
                sigma = u;
                s_off = s;
                lattice = {Int(mx), Int(my)};
            }
        }
    if (found == 0)
        throw CertificationError("keepaway_step: leaf disc does not meet the target transversal");
    if (found > 1)
        throw CertificationError(
            "keepaway_step: transversal crossing is not unique (radii beyond the transversality scale)");

    StepOutcome out;
    out.sigma = sigma;
    out.s_off = s_off;
    out.lattice = lattice;
    // the new base point sits at leaf distance 3r from the crossing, on the
    // ray from z through x_hat; ties break toward positive leaf orientation
    int dir = quad_sign(sigma) >= 0 ? 1 : -1;
    out.u_offset = Quad(3 * r) * Quad(Rat(dir)) - sigma;
    out.x_next = reduce_mod1({x_hat.x + out.u_offset * sys.e_u.x, x_hat.y + out.u_offset * sys.e_u.y});

    // exact ring certificate: the new disc spans |u| in [2r, 4r], |s| <= delta
    Quad u_rel = sigma + out.u_offset;  // = 3r * dir
    out.annulus_certified =
        quad_abs(u_rel) == Quad(3 * r) && quad_abs(s_off) <= Quad(delta) && quad_abs(sigma) <= Quad(2 * r);
    // endpoint membership in the enclosing box V_{delta,4r}(target)
    VBox big{target, Quad(4 * r), Quad(delta)};
    TorusPoint end_plus = reduce_mod1({out.x_next.x + Quad(r) * sys.e_u.x, out.x_next.y + Quad(r) * sys.e_u.y});
    TorusPoint end_minus = reduce_mod1({out.x_next.x - Quad(r) * sys.e_u.x, out.x_next.y - Quad(r) * sys.e_u.y});
    out.annulus_certified = out.annulus_certified && contains(sys, big, end_plus) &&
                            contains(sys, big, end_minus) && contains(sys, big, out.x_next);
    if (!out.annulus_certified)
        throw CertificationError("keepaway_step: ring inclusion certificates failed");
    return out;
}

namespace {

struct OrbitEqualityWitness {
    bool same_orbit = false;
    long time = 0;
};

OrbitEqualityWitness same_orbit(const ToralHyperbolicSystem& sys, const TorusPoint& p,
                                const TorusPoint& q, long horizon) {
    TorusPoint fwd = p, bwd = p;
    if (fwd.x == q.x && fwd.y == q.y) return {true, 0};
    for (long k = 1; k <= horizon; ++k) {
        fwd = reduce_mod1(sys.apply(fwd));
        if (fwd.x == q.x && fwd.y == q.y) return {true, k};
        bwd = reduce_mod1(sys.apply_inv(bwd));
        if (bwd.x == q.x && bwd.y == q.y) return {true, -k};
    }
    return {false, 0};
}

struct ConditionCheck {
    bool ok = true;
    double margin = 1e308;
};

// Conditions independent of x0: for every target i and 1 <= k < J the
// advected closed ring around p_i misses V_{delta,r}(p_i); for every
// ordered pair i != j and 0 <= k < J the advected enclosing box misses
// V_{delta,r}(p_j). Together they certify that each stage runs at least
// one rescaled time unit before the next hit.
ConditionCheck check_target_conditions(const ToralHyperbolicSystem& sys,
                                       const std::vector<TorusPoint>& targets, const Rat& r,
                                       const Rat& delta) {
    ConditionCheck out;
    for (size_t i = 0; i < targets.size(); ++i) {
        TorusPoint advected = targets[i];
        Quad lam_k(Rat(1)), lam_s_k(Rat(1));
        for (long k = 0; k < sys.steps_per_unit; ++k) {
            if (k > 0) {
                advected = reduce_mod1(sys.apply(advected));
                lam_k = lam_k * sys.lambda_u_abs;
                lam_s_k = lam_s_k * quad_abs(sys.lambda_s);
            }
            for (size_t j = 0; j < targets.size(); ++j) {
                if (i == j && k == 0) continue;  // the ring misses its own core box structurally
                Quad u_lo = (i == j) ? Quad(2 * r) * lam_k : Quad(Rat(0));
                Quad u_hi = Quad(4 * r) * lam_k;
                auto res = detail::annulus_box_meet(sys, advected, u_lo, u_hi, Quad(delta) * lam_s_k,
                                                    targets[j], Quad(r), Quad(delta));
                if (res.meets) {
                    out.ok = false;
                    return out;
                }
                out.margin = std::min(out.margin, res.margin);
            }
        }
    }
    return out;
}

// x0-dependent conditions: F_r(x0) inside the window, and its advected
// images missing every V_{delta,r}(p_i) for 0 <= k < J.
ConditionCheck check_seed_conditions(const ToralHyperbolicSystem& sys, const TorusPoint& x0,
                                     const std::vector<TorusPoint>& targets, const Rat& r,
                                     const Rat& delta, const Window& window) {
    ConditionCheck out;
    Rat r_slack = r * Rat(10001, 10000);  // covers the near-unit leaf vector length
    if (window.radius <= r_slack) {
        out.ok = false;
        return out;
    }
    QVec2 center{Quad(window.cx), Quad(window.cy)};
    QVec2 off = x0 - center;
    off = {off.x - Quad(Rat(quad_floor(off.x + Quad(Rat(1, 2))))),
           off.y - Quad(Rat(quad_floor(off.y + Quad(Rat(1, 2)))))};
    Quad d2 = off.x * off.x + off.y * off.y;
    Rat budget = (window.radius - r_slack) * (window.radius - r_slack);
    if (!(d2 <= Quad(budget))) {
        out.ok = false;
        return out;
    }
    out.margin = std::min(out.margin, budget.get_d() - quad_to_double(d2));

    TorusPoint advected = x0;
    Quad lam_k(Rat(1));
    for (long k = 0; k < sys.steps_per_unit; ++k) {
        if (k > 0) {
            advected = reduce_mod1(sys.apply(advected));
            lam_k = lam_k * sys.lambda_u_abs;
        }
        for (const auto& p : targets) {
            auto res = detail::annulus_box_meet(sys, advected, Quad(Rat(0)), Quad(r) * lam_k,
                                                Quad(Rat(0)), p, Quad(r), Quad(delta));
            if (res.meets) {
                out.ok = false;
                return out;
            }
            out.margin = std::min(out.margin, res.margin);
        }
    }
    return out;
}

}  // namespace

Constants choose_constants(const ToralHyperbolicSystem& sys, const std::vector<TorusPoint>& targets,
                           const Window& window, const KeepAwayParams& params) {
    if (window.radius <= 0)
        throw std::invalid_argument("choose_constants: window radius must be positive");
    for (size_t i = 0; i < targets.size(); ++i)
        for (size_t j = i + 1; j < targets.size(); ++j) {
            auto w = same_orbit(sys, targets[i], targets[j], params.orbit_check_horizon);
            if (w.same_orbit)
                throw std::invalid_argument(
                    "choose_constants: targets lie on the same orbit (offset " +
                    std::to_string(w.time) + " applications)");
        }

    Rat cap = sys.radius_cap();
    Rat r = params.r;
    if (r == 0) {
        r = window.radius / 4;
        if (r > cap / 2) r = cap / 2;
    }
    if (r > cap)
        throw std::invalid_argument("choose_constants: requested r exceeds the embedded-disc scale");
    Rat delta = params.delta == 0 ? r / 4 : params.delta;
    if (delta > r) delta = r;

    const Rat floor_r(1, 1000000);
    double wx = window.cx.get_d(), wy = window.cy.get_d(), wr = window.radius.get_d();

    while (r >= floor_r && delta >= floor_r) {
        auto cond = check_target_conditions(sys, targets, r, delta);
        if (cond.ok) {
            // deterministic seed candidates: window center, then a fixed spiral
            std::vector<std::pair<double, double>> offsets = {{0, 0}};
            for (int ring = 1; ring <= 3; ++ring) {
                int spokes = 8 * ring;
                for (int t = 0; t < spokes; ++t) {
                    double ang = 2 * M_PI * t / spokes;
                    double rad = wr * 0.22 * ring;
                    offsets.emplace_back(rad * std::cos(ang), rad * std::sin(ang));
                }
            }
            for (const auto& [dx, dy] : offsets) {
                TorusPoint x0 = rational_point(snap_rat(wx + dx, 4096), snap_rat(wy + dy, 4096));
                auto seed = check_seed_conditions(sys, x0, targets, r, delta, window);
                if (seed.ok) return {x0, r, delta, std::min(cond.margin, seed.margin)};
            }
        }
        r /= 2;
        delta /= 2;
    }
    throw std::invalid_argument(
        "choose_constants: no admissible constants above the 1e-6 floor (targets too close together "
        "or window too small)");
}

namespace {

double basis_kappa(const ToralHyperbolicSystem& sys) {
    auto norm2 = [](const QVec2& v) {
        double x = quad_to_double(v.x), y = quad_to_double(v.y);
        return std::sqrt(x * x + y * y);
    };
    return 1.0 / std::max(norm2(sys.u_row), norm2(sys.s_row));
}

ValidationReport validate_orbit(const ToralHyperbolicSystem& sys, const TorusPoint& q,
                                const std::vector<TorusPoint>& targets, const Rat& r,
                                const Rat& delta, double t_max) {
    ValidationReport rep;
    rep.min_distance.assign(targets.size(), std::numeric_limits<double>::infinity());
    long steps = static_cast<long>(std::ceil(t_max * sys.t_unit)) + 1;
    detail::OrbitCursor cursor(sys, q);
    std::vector<std::array<double, 2>> targets_d;
    for (const auto& p : targets) targets_d.push_back(to_doubles(p));
    for (long k = 0; k <= steps; ++k) {
        if (k > 0) cursor.step();
        auto xd = cursor.shadow();
        for (size_t i = 0; i < targets.size(); ++i)
            rep.min_distance[i] = std::min(rep.min_distance[i], torus_distance(xd, targets_d[i]));
        // the avoidance region V_{delta,r} is the {|u| <= r, |s| <= delta}
        // box, i.e. the hit test with the leaf radius halved
        auto hit = detail::hit_test(sys, cursor.point(), xd, cursor.shadow_error(), targets,
                                    targets_d, r / 2, delta);
        if (hit.hit) {
            rep.ok = false;
            rep.first_violation_time = sys.rescaled(k);
            rep.steps_checked = k;
            return rep;
        }
    }
    rep.steps_checked = steps;
    return rep;
}

}  // namespace

KeepAwayResult run_keepaway(const ToralHyperbolicSystem& sys, const std::vector<TorusPoint>& targets,
                            const Window& window, const KeepAwayParams& params) {
    KeepAwayResult out;
    out.kappa = basis_kappa(sys);

    Constants consts = choose_constants(sys, targets, window, params);
    out.trace.x0 = consts.x0;
    out.trace.r = consts.r;
    out.trace.delta = consts.delta;

    if (targets.empty()) {
        out.q = consts.x0;
        out.epsilon = std::numeric_limits<double>::infinity();
        return out;
    }
    const Rat& r = consts.r;
    const Rat& delta = consts.delta;

    std::vector<std::array<double, 2>> targets_d;
    for (const auto& p : targets) targets_d.push_back(to_doubles(p));

    // D_n in leaf coordinates of x0: exact center c_n and half-length
    // r |lambda|^{-T_n}; the per-stage expansion certificates imply both the
    // nesting and the 4^{-n} length bound
    TorusPoint x_cur = consts.x0;
    Quad c_n{Rat(0)};
    Quad lam_inv_T{Rat(1)};
    Quad ell_n{Quad(r)};
    const Quad four{Rat(4)};

    for (int stage = 0; stage < params.max_stages; ++stage) {
        detail::OrbitCursor cursor(sys, x_cur);
        detail::ExactHit hit;
        long k = 0;
        while (k < params.per_stage_cap) {
            ++k;
            cursor.step();
            hit = detail::hit_test(sys, cursor.point(), cursor.shadow(), cursor.shadow_error(),
                                   targets, targets_d, r, delta);
            if (hit.hit) break;
        }
        if (!hit.hit) {
            out.trace.tau_infinite = true;
            break;
        }
        Quad expansion = quad_pow(sys.lambda_u_abs, k);
        if (!(expansion >= four))
            throw CertificationError(
                "run_keepaway: hit before one rescaled unit; disjointness certificates insufficient");

        StepOutcome step = keepaway_step(sys, cursor.point(), targets[hit.target], r, delta);
        bool containment = quad_abs(step.u_offset) + Quad(r) <= Quad(r) * expansion;
        if (!containment)
            throw CertificationError("run_keepaway: pullback containment certificate failed");

        lam_inv_T = lam_inv_T * quad_pow(sys.lambda_u, -k);
        Quad c_next = c_n + step.u_offset * lam_inv_T;
        Quad ell_next = ell_n / expansion;

        Stage st;
        st.tau_applications = k;
        st.tau_rescaled = sys.rescaled(k);
        st.target = hit.target;
        st.x_next = step.x_next;
        st.sigma = quad_to_double(step.sigma);
        st.u_offset = quad_to_double(step.u_offset);
        st.interval_center = quad_to_double(c_next);
        st.interval_half_length = quad_to_double(ell_next);
        st.containment_certified = containment;
        st.annulus_certified = step.annulus_certified;
        out.trace.stages.push_back(std::move(st));

        c_n = c_next;
        ell_n = ell_next;
        x_cur = step.x_next;
    }

    out.q = reduce_mod1({consts.x0.x + c_n * sys.e_u.x, consts.x0.y + c_n * sys.e_u.y});
    out.epsilon = 0.5 * std::min(r.get_d(), delta.get_d()) * out.kappa;
    out.trace.validation = validate_orbit(sys, out.q, targets, r, delta, params.t_max);
    return out;
}

double hausdorff_distance(const std::vector<std::array<double, 2>>& a,
                          const std::vector<std::array<double, 2>>& b) {
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    for (int side = 0; side < 2; ++side) {
        const auto& from = side == 0 ? a : b;
        const auto& to = side == 0 ? b : a;
        for (const auto& p : from) {
            double best = 1e308;
            for (const auto& q : to) best = std::min(best, torus_distance(p, q));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

}  // namespace homflow::keepaway
