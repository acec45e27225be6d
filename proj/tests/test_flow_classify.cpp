#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algebra_zoo.hpp"
#include "homflow/flow_classify.hpp"

#include <Eigen/Dense>

#include <random>

using namespace homflow;
using namespace homflow::flows;
using homflow::lie::Element;

namespace {

Rat rr(long n, long d = 1) { return make_rat(n, d); }

Element ev(size_t n, size_t i) { return unit_vec(n, i); }

Element random_element(std::mt19937_64& rng, size_t n) {
    Element v(n);
    for (auto& c : v)
        c = make_rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4));
    return v;
}

Eigen::MatrixXd to_eigen(const RatMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
    return out;
}

struct OracleCounts {
    long zero = 0, plus = 0, minus = 0;
    double min_nonzero_re = 1e308;
};

OracleCounts eigen_oracle(const lie::LieAlgebra& alg, const Element& x, double tol = 1e-6) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(lie::ad_matrix(alg, x)), false);
    OracleCounts c;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        double re = es.eigenvalues()(i).real();
        if (std::abs(re) <= tol) ++c.zero;
        else {
            c.min_nonzero_re = std::min(c.min_nonzero_re, std::abs(re));
            if (re > 0) ++c.plus;
            else ++c.minus;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("classify_flow on the pinned generators") {
    auto sl2 = zoo::sl2();
    auto fc = classify_flow(sl2, ev(3, 0));
    CHECK(fc.tag == FlowTag::PartiallyHyperbolic);
    CHECK(fc.counts.zero == 1);
    CHECK(fc.counts.plus == 1);
    CHECK(fc.counts.minus == 1);

    CHECK(classify_flow(sl2, ev(3, 1)).tag == FlowTag::QuasiUnipotent);  // nilpotent n+

    auto h3 = zoo::h3();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t)
        CHECK(classify_flow(h3, random_element(rng, 3)).tag == FlowTag::QuasiUnipotent);
}

TEST_CASE("classification is invariant under scaling and basis permutation") {
    auto sl2 = zoo::sl2();
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Element x = random_element(rng, 3);
        auto base = classify_flow(sl2, x);
        auto scaled = classify_flow(sl2, vec_scale(rr(2), x));
        CHECK(base.tag == scaled.tag);
        CHECK(base.counts.zero == scaled.counts.zero);
        CHECK(base.counts.plus == scaled.counts.plus);
        CHECK(base.counts.minus == scaled.counts.minus);
    }
    // permuted basis of sl2: order (n+, n-, a)
    lie::LieAlgebra::BracketTable t;
    t[{0, 1}] = {rr(0), rr(0), rr(1)};   // [n+, n-] = a
    t[{0, 2}] = {rr(-1), rr(0), rr(0)};  // [n+, a] = -n+
    t[{1, 2}] = {rr(0), rr(1), rr(0)};   // [n-, a] = n-
    lie::LieAlgebra permuted(3, {"n+", "n-", "a"}, std::move(t));
    REQUIRE(lie::validate(permuted).ok());
    auto fc = classify_flow(permuted, ev(3, 2));
    CHECK(fc.tag == FlowTag::PartiallyHyperbolic);
    CHECK(fc.counts.zero == 1);
}

TEST_CASE("exact counts match the eigenvalue oracle on the seeded corpus") {
    std::vector<lie::LieAlgebra> corpus;
    corpus.push_back(zoo::sl2());
    corpus.push_back(zoo::direct_sum(zoo::sl2(), zoo::sl2()));
    corpus.push_back(zoo::h3());
    corpus.push_back(zoo::direct_sum(zoo::aff1(), zoo::h3()));
    std::mt19937_64 rng(99);
    int accepted = 0;
    while (accepted < 100) {
        const auto& alg = corpus[rng() % corpus.size()];
        Element x = random_element(rng, alg.dim());
        auto oracle = eigen_oracle(alg, x);
        if (oracle.min_nonzero_re < 1e-3) continue;  // borderline instances excluded
        ++accepted;
        auto fc = classify_flow(alg, x);
        CHECK(fc.counts.zero == oracle.zero);
        CHECK(fc.counts.plus == oracle.plus);
        CHECK(fc.counts.minus == oracle.minus);
    }
}

TEST_CASE("spectral_splitting: pinned subspaces and residuals") {
    auto sl2 = zoo::sl2();
    auto sp = spectral_splitting(sl2, ev(3, 0));
    REQUIRE(sp.p_zero.size() == 1);
    REQUIRE(sp.p_plus.size() == 1);
    REQUIRE(sp.p_minus.size() == 1);
    // p0 = span(a), p+ = span(n+), p- = span(n-)
    CHECK(std::abs(std::abs(sp.p_zero[0][0]) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(sp.p_plus[0][1]) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(sp.p_minus[0][2]) - 1.0) < 1e-12);
    CHECK(sp.invariance_residual < 1e-8);
    CHECK(sp.grading_residual < 1e-8);

    // X = 0: everything is p0
    auto sp0 = spectral_splitting(sl2, RatVec(3, rr(0)));
    CHECK(sp0.p_zero.size() == 3);
    CHECK(sp0.p_plus.empty());

    // sl2 + sl2 with X = (a, n+): counts (4,1,1)
    auto twice = zoo::direct_sum(zoo::sl2(), zoo::sl2());
    Element x(6, rr(0));
    x[0] = 1;  // a in the first factor
    x[4] = 1;  // n+ in the second factor
    auto sp2 = spectral_splitting(twice, x);
    CHECK(sp2.counts.zero == 4);
    CHECK(sp2.counts.plus == 1);
    CHECK(sp2.counts.minus == 1);
    CHECK(sp2.invariance_residual < 1e-8);
}

TEST_CASE("spectral_splitting residuals stay small on random sl2-sized corpora") {
    std::mt19937_64 rng(17);
    auto twice = zoo::direct_sum(zoo::sl2(), zoo::sl2());
    for (int t = 0; t < 20; ++t) {
        Element x = random_element(rng, 6);
        auto sp = spectral_splitting(twice, x);
        CHECK(sp.invariance_residual < 1e-8);
        CHECK(sp.grading_residual < 1e-8);
        CHECK(sp.counts.zero + sp.counts.plus + sp.counts.minus == 6);
    }
}

TEST_CASE("jordan_chevalley: pinned decompositions") {
    auto sl2 = zoo::sl2();
    // X = n+ + n-: already semisimple (ad eigenvalues 0, +-1... squarefree)
    Element x = vec_add(ev(3, 1), ev(3, 2));
    auto jp = jordan_chevalley(sl2, x);
    CHECK(jp.s == x);
    CHECK(vec_is_zero(jp.n));

    // X = n+: purely nilpotent
    auto jp2 = jordan_chevalley(sl2, ev(3, 1));
    CHECK(vec_is_zero(jp2.s));
    CHECK(jp2.n == ev(3, 1));

    // X = a: semisimple
    auto jp3 = jordan_chevalley(sl2, ev(3, 0));
    CHECK(jp3.s == ev(3, 0));
    CHECK(vec_is_zero(jp3.n));

    // mixed: X = a + n+ has s = a, n = n+? ad(a + n+) eigenvalues 0, +-1
    // distinct, so it is already semisimple as a matrix
    auto jp4 = jordan_chevalley(sl2, vec_add(ev(3, 0), ev(3, 1)));
    CHECK(vec_add(jp4.s, jp4.n) == vec_add(ev(3, 0), ev(3, 1)));
    CHECK(vec_is_zero(lie::bracket(sl2, jp4.s, jp4.n)));

    CHECK_THROWS_AS(jordan_chevalley(zoo::h3(), ev(3, 0)), std::invalid_argument);  // center
}

TEST_CASE("jordan_chevalley certificates hold on 100 random centerless generators") {
    std::vector<lie::LieAlgebra> corpus;
    corpus.push_back(zoo::sl2());
    corpus.push_back(zoo::direct_sum(zoo::sl2(), zoo::sl2()));
    corpus.push_back(zoo::aff1());
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 100; ++t) {
        const auto& alg = corpus[rng() % corpus.size()];
        Element x = random_element(rng, alg.dim());
        auto jp = jordan_chevalley(alg, x);
        CHECK(vec_add(jp.s, jp.n) == x);
        CHECK(vec_is_zero(lie::bracket(alg, jp.s, jp.n)));
        RatMatrix ad_n = lie::ad_matrix(alg, jp.n);
        CHECK(ad_n.pow(static_cast<unsigned>(alg.dim())).is_zero());
        CHECK(poly_gcd(jp.min_poly_s, jp.min_poly_s.derivative()).degree() == 0);
    }
}

TEST_CASE("group_jordan mirrors the additive decomposition") {
    auto sl2 = zoo::sl2();
    auto gj = group_jordan(sl2, ev(3, 1));
    CHECK(vec_is_zero(gj.c_generator));
    CHECK(gj.u_generator == ev(3, 1));
    CHECK(vec_is_zero(lie::bracket(sl2, gj.c_generator, gj.u_generator)));
}

TEST_CASE("sl2_embed recovers the defining triple of sl2") {
    auto sl2 = zoo::sl2();
    auto triple = sl2_embed(sl2, ev(3, 1));
    CHECK(triple.a == ev(3, 0));
    CHECK(triple.n_minus == ev(3, 2));
    CHECK(lie::bracket(sl2, triple.a, triple.n_plus) == triple.n_plus);
    CHECK(lie::bracket(sl2, triple.n_plus, triple.n_minus) == triple.a);
}

TEST_CASE("sl2_embed with a commuting constraint stays in the first factor") {
    auto twice = zoo::direct_sum(zoo::sl2(), zoo::sl2());
    Element n_plus = ev(6, 1);  // (n+, 0)
    Element s = ev(6, 3);       // (0, a)
    auto triple = sl2_embed(twice, n_plus, s);
    for (size_t i = 3; i < 6; ++i) {
        CHECK(triple.a[i] == 0);
        CHECK(triple.n_minus[i] == 0);
    }
    CHECK(lie::bracket(twice, triple.a, triple.n_plus) == triple.n_plus);
    CHECK(lie::bracket(twice, triple.n_plus, triple.n_minus) == triple.a);
    CHECK(vec_is_zero(lie::bracket(twice, triple.a, s)));
    CHECK(vec_is_zero(lie::bracket(twice, triple.n_minus, s)));
}

TEST_CASE("sl2_embed completes a highest-root nilpotent of sl3") {
    auto sl3 = zoo::sl3();
    Element e13 = ev(8, 4);
    auto triple = sl2_embed(sl3, e13);
    CHECK(lie::bracket(sl3, triple.a, triple.n_plus) == triple.n_plus);
    CHECK(lie::bracket(sl3, triple.a, triple.n_minus) == vec_scale(rr(-1), triple.n_minus));
    CHECK(lie::bracket(sl3, triple.n_plus, triple.n_minus) == triple.a);
    // the neutral element is (h1 + h2)/2
    Element expected(8, rr(0));
    expected[0] = rr(1, 2);
    expected[1] = rr(1, 2);
    CHECK(triple.a == expected);
}

TEST_CASE("sl2_embed rejects bad inputs") {
    CHECK_THROWS_AS(sl2_embed(zoo::h3(), ev(3, 0)), std::invalid_argument);  // not semisimple
    auto sl2 = zoo::sl2();
    CHECK_THROWS_AS(sl2_embed(sl2, ev(3, 0)), std::invalid_argument);  // a is not nilpotent
    // constraint that does not commute
    CHECK_THROWS_AS(sl2_embed(zoo::direct_sum(zoo::sl2(), zoo::sl2()), ev(6, 1),
                              std::optional<Element>(ev(6, 0))),
                    std::invalid_argument);
}
