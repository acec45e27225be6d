#include "homflow/flow_classify.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace homflow::flows {

using lie::Element;
using lie::LieAlgebra;

FlowClass classify_flow(const LieAlgebra& alg, const Element& x) {
    RatMatrix ad = lie::ad_matrix(alg, x);
    RatPoly chi(characteristic_polynomial(ad));
    HalfPlaneCertificate cert;
    HalfPlaneCounts counts = halfplane_root_counts(chi, &cert);
    FlowTag tag = (counts.plus == 0 && counts.minus == 0) ? FlowTag::QuasiUnipotent
                                                          : FlowTag::PartiallyHyperbolic;
    return {tag, counts, std::move(chi), std::move(cert)};
}

namespace {

Eigen::MatrixXd to_eigen(const RatMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
    return out;
}

// Swaps the diagonal entries at positions k, k+1 of a complex Schur form,
// updating T and U (T <- Q^H T Q, U <- U Q).
void schur_swap(Eigen::MatrixXcd& t, Eigen::MatrixXcd& u, long k) {
    std::complex<double> t11 = t(k, k), t12 = t(k, k + 1), t22 = t(k + 1, k + 1);
    std::complex<double> v1 = t12, v2 = t22 - t11;
    double n = std::sqrt(std::norm(v1) + std::norm(v2));
    if (n < 1e-300) return;  // equal eigenvalues, nothing to move
    Eigen::Matrix2cd q;
    q << v1 / n, -std::conj(v2) / n, v2 / n, std::conj(v1) / n;
    t.middleRows(k, 2) = q.adjoint() * t.middleRows(k, 2);
    t.middleCols(k, 2) = t.middleCols(k, 2) * q;
    u.middleCols(k, 2) = u.middleCols(k, 2) * q;
    t(k + 1, k) = 0.0;
}

int classify_eig(const std::complex<double>& mu, double tol) {
    if (std::abs(mu.real()) <= tol) return 0;
    return mu.real() > 0 ? 1 : -1;
}

// Orthonormal real basis of the invariant subspace spanned by the leading
// `count` Schur vectors (a conjugation-stable class, so a real basis exists).
std::vector<std::vector<double>> real_basis_of_leading(const Eigen::MatrixXcd& u, long count) {
    if (count == 0) return {};
    long n = u.rows();
    Eigen::MatrixXd candidates(n, 2 * count);
    for (long j = 0; j < count; ++j) {
        candidates.col(2 * j) = u.col(j).real();
        candidates.col(2 * j + 1) = u.col(j).imag();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(candidates);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, count);
    std::vector<std::vector<double>> basis;
    for (long j = 0; j < count; ++j) {
        std::vector<double> v(n);
        for (long i = 0; i < n; ++i) v[i] = q(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Reorders a copy of the Schur pair so that eigenvalues of class `cls` come
// first, then extracts a real orthonormal basis of their invariant subspace.
std::vector<std::vector<double>> class_subspace(Eigen::MatrixXcd t, Eigen::MatrixXcd u, int cls,
                                                double tol, long expected) {
    long n = t.rows();
    // selection sort with adjacent swaps keeps the Schur structure intact
    for (long target = 0; target < expected; ++target) {
        long src = -1;
        for (long j = target; j < n; ++j)
            if (classify_eig(t(j, j), tol) == cls) {
                src = j;
                break;
            }
        if (src < 0) throw CertificationError("spectral_splitting: class member lost in reorder");
        for (long j = src; j > target; --j) schur_swap(t, u, j - 1);
    }
    return real_basis_of_leading(u, expected);
}

Eigen::MatrixXd basis_matrix(const std::vector<std::vector<double>>& basis, long n) {
    Eigen::MatrixXd m(n, static_cast<long>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
        for (long i = 0; i < n; ++i) m(i, static_cast<long>(j)) = basis[j][i];
    return m;
}

}  // namespace

SpectralSplitting spectral_splitting(const LieAlgebra& alg, const Element& x) {
    FlowClass cls = classify_flow(alg, x);
    RatMatrix ad = lie::ad_matrix(alg, x);
    Eigen::MatrixXd md = to_eigen(ad);
    long n = md.rows();

    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(md.cast<std::complex<double>>());
    if (schur.info() != Eigen::Success)
        throw CertificationError("spectral_splitting: Schur decomposition failed");
    Eigen::MatrixXcd t = schur.matrixT(), u = schur.matrixU();

    // escalate the classification tolerance until the numeric class sizes
    // agree with the exact root counts
    double tol = 1e-9;
    const double tol_max = 1e-5;
    SpectralSplitting out;
    out.counts = cls.counts;
    out.certificate = cls.certificate;
    while (true) {
        long z = 0, p = 0, m = 0;
        for (long j = 0; j < n; ++j) {
            int c = classify_eig(t(j, j), tol);
            if (c == 0) ++z;
            else if (c > 0) ++p;
            else ++m;
        }
        if (z == cls.counts.zero && p == cls.counts.plus && m == cls.counts.minus) break;
        tol *= 10;
        if (tol > tol_max)
            throw CertificationError(
                "spectral_splitting: numeric spectrum does not match exact counts within the "
                "tolerance ladder (ill-conditioned borderline spectrum)");
    }
    out.tolerance_used = tol;

    out.p_zero = class_subspace(t, u, 0, tol, cls.counts.zero);
    out.p_plus = class_subspace(t, u, 1, tol, cls.counts.plus);
    out.p_minus = class_subspace(t, u, -1, tol, cls.counts.minus);

    // invariance residual: ad(X) maps each subspace into itself
    Eigen::MatrixXd bz = basis_matrix(out.p_zero, n), bp = basis_matrix(out.p_plus, n),
                    bm = basis_matrix(out.p_minus, n);
    double inv_res = 0;
    for (const Eigen::MatrixXd* b : {&bz, &bp, &bm}) {
        if (b->cols() == 0) continue;
        Eigen::MatrixXd img = md * (*b);
        Eigen::MatrixXd proj = img - (*b) * ((*b).transpose() * img);
        inv_res = std::max(inv_res, proj.cwiseAbs().maxCoeff());
    }
    out.invariance_residual = inv_res;

    // grading residual: [class a, class b] must land in class a+b (with the
    // convention zero+zero -> zero, zero+pm -> pm, plus+plus -> plus, ...).
    // Mixed plus+minus brackets are unconstrained.
    // double-precision bilinear extension of the structure constants
    auto bracket_d = [&](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> out_d(alg.dim(), 0.0);
        for (const auto& [key, coeffs] : alg.brackets()) {
            auto [i, j] = key;
            double w = a[i] * b[j] - a[j] * b[i];
            if (w == 0) continue;
            for (size_t tt = 0; tt < alg.dim(); ++tt) out_d[tt] += w * coeffs[tt].get_d();
        }
        return out_d;
    };
    auto residual_outside = [&](const std::vector<double>& v, const Eigen::MatrixXd& target) {
        Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(v.data(), n);
        if (target.cols() == 0) return ev.cwiseAbs().maxCoeff();
        Eigen::VectorXd proj = ev - target * (target.transpose() * ev);
        return proj.cwiseAbs().maxCoeff();
    };
    double grad_res = 0;
    struct Pair {
        const std::vector<std::vector<double>>*lhs, *rhs;
        const Eigen::MatrixXd* target;
    };
    std::vector<Pair> pairs = {{&out.p_zero, &out.p_zero, &bz}, {&out.p_zero, &out.p_plus, &bp},
                               {&out.p_zero, &out.p_minus, &bm}, {&out.p_plus, &out.p_plus, &bp},
                               {&out.p_minus, &out.p_minus, &bm}};
    for (const auto& pr : pairs)
        for (const auto& va : *pr.lhs)
            for (const auto& vb : *pr.rhs) {
                auto br = bracket_d(va, vb);
                bool nonzero = false;
                for (double c : br)
                    if (std::abs(c) > 1e-14) nonzero = true;
                if (!nonzero) continue;
                grad_res = std::max(grad_res, residual_outside(br, *pr.target));
            }
    out.grading_residual = grad_res;
    return out;
}

namespace {

RatMatrix eval_poly_at_matrix(const RatPoly& p, const RatMatrix& m) {
    size_t n = m.rows();
    RatMatrix acc(n, n);
    if (p.is_zero()) return acc;
    for (long k = p.degree(); k >= 0; --k) {
        acc = acc * m;
        for (size_t i = 0; i < n; ++i) acc(i, i) += p[static_cast<size_t>(k)];
    }
    return acc;
}

}  // namespace

JordanPair jordan_chevalley(const LieAlgebra& alg, const Element& x) {
    if (lie::center(alg).dimension() != 0)
        throw std::invalid_argument(
            "jordan_chevalley: algebra has nontrivial center; the decomposition of an element "
            "is not determined by ad");
    size_t n = alg.dim();
    RatMatrix m = lie::ad_matrix(alg, x);

    RatPoly chi(characteristic_polynomial(m));
    RatPoly sf = divmod(chi, poly_gcd(chi, chi.derivative())).first;  // squarefree part

    // Newton iteration modulo the squarefree part: converges to the
    // semisimple summand of m in at most ~log2(n) steps.
    RatMatrix s = m;
    for (size_t iter = 0; iter <= n + 1; ++iter) {
        RatMatrix f_s = eval_poly_at_matrix(sf, s);
        if (f_s.is_zero()) break;
        if (iter == n + 1)
            throw CertificationError("jordan_chevalley: Newton iteration failed to terminate");
        auto deriv_inv = inverse(eval_poly_at_matrix(sf.derivative(), s));
        if (!deriv_inv)
            throw CertificationError("jordan_chevalley: singular derivative in Newton step");
        s = s - f_s * (*deriv_inv);
    }

    // pull the matrix back to an algebra element: ad(s_el) = s
    std::vector<RatVec> ad_cols;
    for (size_t i = 0; i < n; ++i) {
        RatMatrix adi = lie::ad_matrix(alg, unit_vec(n, i));
        RatVec flat(n * n);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) flat[r * n + c] = adi(r, c);
        ad_cols.push_back(std::move(flat));
    }
    RatVec s_flat(n * n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) s_flat[r * n + c] = s(r, c);
    auto s_el = solve(from_cols(ad_cols, n * n), s_flat);
    if (!s_el)
        throw CertificationError(
            "jordan_chevalley: semisimple part is not an inner derivation of the algebra");

    JordanPair out;
    out.s = *s_el;
    out.n = vec_sub(x, out.s);

    // exact certificates
    if (!vec_is_zero(lie::bracket(alg, out.s, out.n)))
        throw CertificationError("jordan_chevalley: [s, n] != 0");
    RatMatrix ad_n = lie::ad_matrix(alg, out.n);
    if (!ad_n.pow(static_cast<unsigned>(n)).is_zero())
        throw CertificationError("jordan_chevalley: nilpotent part is not nilpotent");
    out.min_poly_s = RatPoly(minimal_polynomial(lie::ad_matrix(alg, out.s)));
    if (poly_gcd(out.min_poly_s, out.min_poly_s.derivative()).degree() != 0)
        throw CertificationError("jordan_chevalley: minimal polynomial of ad(s) is not squarefree");
    return out;
}

GroupJordan group_jordan(const LieAlgebra& alg, const Element& x) {
    JordanPair jp = jordan_chevalley(alg, x);
    return {std::move(jp.s), std::move(jp.n)};
}

namespace {

// Solve (a restricted_to_cols) y = b where the unknown ranges over the span
// of `cols`; returns the combination in ambient coordinates.
std::optional<RatVec> solve_in_subspace(const RatMatrix& a, const std::vector<RatVec>& cols,
                                        const RatVec& b) {
    if (cols.empty()) return std::nullopt;
    RatMatrix c = from_cols(cols, a.cols());
    auto y = solve(a * c, b);
    if (!y) return std::nullopt;
    RatVec out = c.apply(*y);
    return out;
}

}  // namespace

Sl2Triple sl2_embed(const LieAlgebra& alg, const Element& n_plus,
                    const std::optional<Element>& s) {
    size_t n = alg.dim();
    if (n_plus.size() != n) throw std::invalid_argument("sl2_embed: element dimension mismatch");
    if (!is_semisimple(alg).semisimple)
        throw std::invalid_argument("sl2_embed: algebra is not semisimple");
    RatMatrix ad_np = lie::ad_matrix(alg, n_plus);
    if (!ad_np.pow(static_cast<unsigned>(n)).is_zero())
        throw std::invalid_argument("sl2_embed: n_plus is not nilpotent");
    if (vec_is_zero(n_plus)) throw std::invalid_argument("sl2_embed: n_plus is zero");

    std::vector<RatVec> domain;
    if (s) {
        if (s->size() != n) throw std::invalid_argument("sl2_embed: constraint dimension mismatch");
        if (!vec_is_zero(lie::bracket(alg, *s, n_plus)))
            throw std::invalid_argument("sl2_embed: constraint s does not commute with n_plus");
        if (!vec_is_zero(jordan_chevalley(alg, *s).n))
            throw std::invalid_argument("sl2_embed: constraint s is not semisimple");
        domain = lie::centralizer(alg, *s).basis;
    } else {
        for (size_t i = 0; i < n; ++i) domain.push_back(unit_vec(n, i));
    }

    // stage 1: a = [n+, y] with (ad n+)^2 y = -n+ makes [a, n+] = n+ automatic
    RatMatrix ad_np2 = ad_np * ad_np;
    auto y = solve_in_subspace(ad_np2, domain, vec_scale(Rat(-1), n_plus));
    if (!y)
        throw CertificationError(
            "sl2_embed: stage-1 system inconsistent (no admissible neutral element; input "
            "violates the preconditions or a rank decision failed)");
    Element a = lie::bracket(alg, n_plus, *y);

    // stage 2: joint linear system [ad a + I; ad n+] n- = [0; a]
    RatMatrix ad_a = lie::ad_matrix(alg, a);
    RatMatrix top = ad_a + RatMatrix::identity(n);
    RatMatrix stacked(2 * n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            stacked(i, j) = top(i, j);
            stacked(n + i, j) = ad_np(i, j);
        }
    RatVec rhs(2 * n, Rat(0));
    for (size_t i = 0; i < n; ++i) rhs[n + i] = a[i];
    auto n_minus = solve_in_subspace(stacked, domain, rhs);
    if (!n_minus)
        throw CertificationError("sl2_embed: stage-2 system inconsistent for n_minus");

    Sl2Triple triple{a, n_plus, *n_minus};

    // exact certificates for the triple (and the constraint, when present)
    if (lie::bracket(alg, triple.a, triple.n_plus) != triple.n_plus)
        throw CertificationError("sl2_embed: [a, n+] != n+");
    if (lie::bracket(alg, triple.a, triple.n_minus) != vec_scale(Rat(-1), triple.n_minus))
        throw CertificationError("sl2_embed: [a, n-] != -n-");
    if (lie::bracket(alg, triple.n_plus, triple.n_minus) != triple.a)
        throw CertificationError("sl2_embed: [n+, n-] != a");
    if (s) {
        for (const Element* e : {&triple.a, &triple.n_plus, &triple.n_minus})
            if (!vec_is_zero(lie::bracket(alg, *e, *s)))
                throw CertificationError("sl2_embed: triple does not commute with s");
    }
    return triple;
}

}  // namespace homflow::flows
