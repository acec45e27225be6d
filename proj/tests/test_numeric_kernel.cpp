#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homflow/int_lattice.hpp"
#include "homflow/polynomial.hpp"
#include "homflow/quad_field.hpp"
#include "homflow/rat_matrix.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>

using namespace homflow;

namespace {

Rat rr(long num, long den = 1) { return make_rat(num, den); }

RatPoly poly(std::vector<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return RatPoly(std::move(c));
}

// float oracle: root counts by real part from companion-matrix eigenvalues.
// Multiple roots on the axis blur into clusters of size ~eps^(1/m), so the
// oracle also reports its smallest nonzero |Re|; comparisons are only made
// when that clears a safety margin (the same filter the exact/oracle
// equivalence contract uses).
struct OracleResult {
    HalfPlaneCounts counts;
    double min_nonzero_re = 1e308;
};

OracleResult float_oracle(const RatPoly& p, double tol = 1e-7) {
    long n = p.degree();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i) {
        companion(i, n - 1) = -Rat(p[static_cast<size_t>(i)] / p.leading()).get_d();
        if (i > 0) companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    OracleResult out;
    for (long i = 0; i < n; ++i) {
        double re = es.eigenvalues()(i).real();
        if (std::abs(re) <= tol) ++out.counts.zero;
        else {
            out.min_nonzero_re = std::min(out.min_nonzero_re, std::abs(re));
            if (re > 0) ++out.counts.plus;
            else ++out.counts.minus;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("rational parsing and canonicalization") {
    CHECK(parse_rat("2/4") == rr(1, 2));
    CHECK(parse_rat("-6/3") == rr(-2));
    CHECK(parse_rat("0.25") == rr(1, 4));
    CHECK(parse_rat("-1.5") == rr(-3, 2));
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
    auto list = parse_rat_list("1/2,0,3");
    REQUIRE(list.size() == 3);
    CHECK(list[0] == rr(1, 2));
    CHECK(list[2] == rr(3));
}

TEST_CASE("rref, kernel, solve, inverse") {
    RatMatrix m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    CHECK(rank(m) == 1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) CHECK(vec_is_zero(m.apply(v)));

    RatMatrix a(2, 2);
    a(0, 0) = 1; a(0, 1) = 1; a(1, 0) = 0; a(1, 1) = 1;
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK((*inv * a) == RatMatrix::identity(2));

    auto sol = solve(a, {rr(3), rr(1)});
    REQUIRE(sol);
    CHECK((*sol)[0] == rr(2));
    CHECK((*sol)[1] == rr(1));

    // inconsistent system
    RatMatrix bad(2, 1);
    bad(0, 0) = 1; bad(1, 0) = 1;
    CHECK_FALSE(solve(bad, {rr(0), rr(1)}));
}

TEST_CASE("characteristic and minimal polynomials") {
    RatMatrix m(2, 2);
    m(0, 0) = 2; m(0, 1) = 1; m(1, 0) = 1; m(1, 1) = 1;
    RatVec chi = characteristic_polynomial(m);
    // x^2 - 3x + 1
    CHECK(chi == RatVec{rr(1), rr(-3), rr(1)});

    // nilpotent Jordan block: minimal polynomial x^2, characteristic x^2
    RatMatrix n(2, 2);
    n(0, 1) = 1;
    CHECK(minimal_polynomial(n) == RatVec{rr(0), rr(0), rr(1)});

    // diagonal with repeated eigenvalue: min poly degree 1 factors
    RatMatrix d = RatMatrix::identity(3);
    CHECK(minimal_polynomial(d) == RatVec{rr(-1), rr(1)});
}

TEST_CASE("polynomial gcd and squarefree decomposition") {
    RatPoly a = poly({-1, 0, 1});       // x^2 - 1
    RatPoly b = poly({1, 1});           // x + 1
    CHECK(poly_gcd(a, b) == b.monic());

    RatPoly p = poly({1, 1}) * poly({1, 1}) * poly({-2, 1});  // (x+1)^2 (x-2)
    auto sf = squarefree_decomposition(p);
    REQUIRE(sf.size() == 2);
    bool saw_sq = false, saw_lin = false;
    for (const auto& [f, mult] : sf) {
        if (mult == 2) { CHECK(f == poly({1, 1})); saw_sq = true; }
        if (mult == 1) { CHECK(f == poly({-2, 1})); saw_lin = true; }
    }
    CHECK(saw_sq);
    CHECK(saw_lin);
}

TEST_CASE("real root counting via Sturm chains") {
    CHECK(count_real_roots(poly({-1, 0, 1})) == 2);   // x^2-1
    CHECK(count_real_roots(poly({1, 0, 1})) == 0);    // x^2+1
    CHECK(count_real_roots(poly({0, 1})) == 1);       // x
    CHECK(count_real_roots(poly({0, 0, 1})) == 1);    // x^2, distinct roots
    CHECK(count_real_roots(poly({0, -1, 0, 1})) == 3);  // x^3 - x
}

TEST_CASE("half-plane root counts: pinned examples") {
    // x(x-1)(x+1) -> (1,1,1)
    auto c = halfplane_root_counts(poly({0, -1, 0, 1}));
    CHECK(c.zero == 1);
    CHECK(c.plus == 1);
    CHECK(c.minus == 1);

    // x^3 -> (3,0,0)
    c = halfplane_root_counts(poly({0, 0, 0, 1}));
    CHECK(c.zero == 3);
    CHECK(c.plus == 0);
    CHECK(c.minus == 0);

    // (x^2+1)(x-2) -> (2,1,0)
    c = halfplane_root_counts(poly({1, 0, 1}) * poly({-2, 1}));
    CHECK(c.zero == 2);
    CHECK(c.plus == 1);
    CHECK(c.minus == 0);

    // stable cubic (x+1)(x+2)(x+3)
    c = halfplane_root_counts(poly({1, 1}) * poly({2, 1}) * poly({3, 1}));
    CHECK(c.minus == 3);

    // symmetric pair (x^2-1), multiplicity 2
    c = halfplane_root_counts(poly({-1, 0, 1}) * poly({-1, 0, 1}));
    CHECK(c.zero == 0);
    CHECK(c.plus == 2);
    CHECK(c.minus == 2);
}

TEST_CASE("half-plane root counts agree with the eigenvalue oracle on random products") {
    std::mt19937_64 rng(20240817);
    auto rand_int = [&](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
    };
    for (int trial = 0; trial < 300; ++trial) {
        RatPoly p = RatPoly::constant(rr(1));
        HalfPlaneCounts expected;
        int factors = 1 + static_cast<int>(rng() % 4);
        for (int f = 0; f < factors; ++f) {
            int kind = static_cast<int>(rng() % 4);
            unsigned mult = 1 + static_cast<unsigned>(rng() % 2);
            RatPoly factor;
            HalfPlaneCounts unit;
            if (kind == 0) {  // rational real root
                Rat root = make_rat(rand_int(-6, 6), rand_int(1, 3));
                factor = RatPoly({-root, rr(1)});
                if (root == 0) unit.zero = 1;
                else if (root > 0) unit.plus = 1;
                else unit.minus = 1;
            } else if (kind == 1) {  // zero root
                factor = poly({0, 1});
                unit.zero = 1;
            } else if (kind == 2) {  // complex pair a +- bi: x^2 - 2a x + a^2 + b^2
                Rat a = make_rat(rand_int(-4, 4), rand_int(1, 2));
                Rat b = make_rat(rand_int(1, 4), rand_int(1, 2));
                factor = RatPoly({a * a + b * b, rr(-2) * a, rr(1)});
                if (a == 0) unit.zero = 2;
                else if (a > 0) unit.plus = 2;
                else unit.minus = 2;
            } else {  // irrational symmetric pair x^2 - d
                long d = rand_int(2, 7);
                factor = RatPoly({rr(-d), rr(0), rr(1)});
                unit.plus = 1;
                unit.minus = 1;
            }
            for (unsigned m = 0; m < mult; ++m) {
                p = p * factor;
                expected.zero += unit.zero;
                expected.plus += unit.plus;
                expected.minus += unit.minus;
            }
        }
        CAPTURE(to_string(p));
        auto got = halfplane_root_counts(p);
        CHECK(got.zero == expected.zero);
        CHECK(got.plus == expected.plus);
        CHECK(got.minus == expected.minus);
        auto oracle = float_oracle(p);
        if (oracle.min_nonzero_re >= 1e-3) {  // borderline spectra excluded
            CHECK(oracle.counts.zero == got.zero);
            CHECK(oracle.counts.plus == got.plus);
            CHECK(oracle.counts.minus == got.minus);
        }
    }
}

TEST_CASE("unit circle root counting") {
    // cat map char poly: reciprocal but no unit-circle roots
    CHECK(count_unit_circle_roots(poly({1, -3, 1})) == 0);
    // parabolic (x-1)^2
    CHECK(count_unit_circle_roots(poly({1, -2, 1})) == 1);
    // x^2 + x + 1: primitive cube roots of unity
    CHECK(count_unit_circle_roots(poly({1, 1, 1})) == 2);
    // x + 1
    CHECK(count_unit_circle_roots(poly({1, 1})) == 1);
    // x^2 - 2: roots +-sqrt(2), off circle
    CHECK(count_unit_circle_roots(poly({-2, 0, 1})) == 0);
    // Lehmer-like Salem check: x^2 - 3x + 1 scaled has none; (x^2-1) has 2
    CHECK(count_unit_circle_roots(poly({-1, 0, 1})) == 2);
}

TEST_CASE("Hermite normal form and integer kernels") {
    IntMat m{{Int(2), Int(4)}, {Int(1), Int(3)}};
    IntMat h = hermite_normal_form(m);
    REQUIRE(h.size() == 2);
    CHECK(h[0][0] == 1);  // determinant 2 lattice: pivots 1 and 2
    CHECK(h[1][0] == 0);
    CHECK(h[0][0] * h[1][1] == 2);

    // kernel of (1, 2): canonical basis {(2, -1)}
    IntMat k = integer_kernel(IntMat{{Int(1), Int(2)}});
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == 2);
    CHECK(k[0][1] == -1);

    // saturation: kernel of (3, -1, -1) must contain (0, 1, -1)
    IntMat k2 = integer_kernel(IntMat{{Int(3), Int(-1), Int(-1)}});
    REQUIRE(k2.size() == 2);
    // membership check by integer solve: (0,1,-1) = a*b0 + b*b1 must have an integer solution
    bool found = false;
    for (long aa = -6; aa <= 6 && !found; ++aa)
        for (long bb = -6; bb <= 6 && !found; ++bb) {
            bool match = true;
            for (size_t c = 0; c < 3; ++c)
                if (Int(aa) * k2[0][c] + Int(bb) * k2[1][c] != IntVec{Int(0), Int(1), Int(-1)}[c])
                    match = false;
            found = match;
        }
    CHECK(found);

    CHECK(is_surjective_over_Z(IntMat{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}}));
    CHECK_FALSE(is_surjective_over_Z(IntMat{{Int(2), Int(0)}}));
    CHECK(is_surjective_over_Z(IntMat{{Int(2), Int(1)}}));  // gcd 1
}

TEST_CASE("quadratic field arithmetic is exact") {
    // golden ratio arithmetic in Q(sqrt 5)
    Quad phi(Rat(1, 2), Rat(1, 2), 5);
    Quad psi = phi.conj();
    CHECK(phi * psi == Quad(Rat(-1)));          // norm -1... phi*conj = (1 - 5)/4 = -1
    CHECK(phi + psi == Quad(Rat(1)));
    CHECK(quad_sign(phi) == 1);
    CHECK(quad_sign(psi) == -1);
    CHECK(quad_abs(psi) == -psi);

    // floor of phi^k tracks Fibonacci-like growth exactly
    Quad p10 = quad_pow(phi, 10);
    CHECK(quad_floor(p10) == 122);  // phi^10 = 122.99...
    CHECK(quad_floor(quad_pow(phi, -3)) == 0);
    CHECK(std::abs(quad_to_double(p10) - std::pow((1 + std::sqrt(5.0)) / 2, 10)) < 1e-9);

    // cancellation: huge opposing parts still convert correctly
    Quad big = quad_pow(phi, 200) + Quad(Rat(1, 3)) - quad_pow(phi, 200);
    CHECK(big == Quad(Rat(1, 3)));
    CHECK(std::abs(quad_to_double(big) - 1.0 / 3) < 1e-15);

    CHECK_THROWS_AS(Quad(Rat(1), Rat(1), 5) + Quad(Rat(1), Rat(1), 2), std::invalid_argument);
}

TEST_CASE("complex rationals") {
    CRat i(Rat(0), Rat(1));
    CHECK((i * i) == CRat(Rat(-1)));
    CHECK(i.conj() == CRat(Rat(0), Rat(-1)));
    CHECK((CRat(Rat(1), Rat(2)) * CRat(Rat(3), Rat(-1))) == CRat(Rat(5), Rat(5)));
    CHECK(CRat(Rat(3), Rat(4)).norm2() == Rat(25));
}
