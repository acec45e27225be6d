#include "homflow/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace homflow {

RatPoly RatPoly::monomial(size_t deg, Rat v) {
    std::vector<Rat> c(deg + 1, Rat(0));
    c[deg] = std::move(v);
    return RatPoly(std::move(c));
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c_[i];
    return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    Rat inv = 1 / c_.back();
    std::vector<Rat> m(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) m[i] = inv * c_[i];
    return RatPoly(std::move(m));
}

RatPoly RatPoly::negate_variable() const {
    std::vector<Rat> m(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) m[i] = (i % 2 == 0) ? c_[i] : -c_[i];
    return RatPoly(std::move(m));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return RatPoly(std::move(c));
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
    std::vector<Rat> c(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = s * a.c_[i];
    return RatPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {RatPoly(), a};
    std::vector<Rat> rem = a.coeffs();
    std::vector<Rat> quot(a.degree() - b.degree() + 1, Rat(0));
    Rat lead_inv = 1 / b.leading();
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        Rat f = rem[k + b.degree()] * lead_inv;
        quot[k] = f;
        if (f == 0) continue;
        for (long j = 0; j <= b.degree(); ++j) rem[k + j] -= f * b[j];
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
    std::vector<std::pair<RatPoly, unsigned>> out;
    if (p.degree() == 0) return out;
    RatPoly f = p.monic();
    RatPoly a = poly_gcd(f, f.derivative());
    if (a.degree() == 0) {
        out.emplace_back(f, 1u);
        return out;
    }
    RatPoly b = divmod(f, a).first;
    RatPoly c = divmod(f.derivative(), a).first;
    RatPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        RatPoly ai = poly_gcd(b, d);
        if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

namespace {

int sgn(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Signed-remainder chain S0, S1, S_{k+1} = -(S_{k-1} mod S_k), stopping at 0.
std::vector<RatPoly> signed_remainder_chain(RatPoly s0, RatPoly s1) {
    std::vector<RatPoly> chain;
    if (!s0.is_zero()) chain.push_back(s0);
    if (s1.is_zero()) return chain;
    chain.push_back(s1);
    while (true) {
        const RatPoly& prev = chain[chain.size() - 2];
        const RatPoly& cur = chain.back();
        RatPoly rem = divmod(prev, cur).second;
        if (rem.is_zero()) break;
        chain.push_back(Rat(-1) * rem);
    }
    return chain;
}

int variations_at_infinity(const std::vector<RatPoly>& chain, bool plus_inf) {
    int count = 0, last = 0;
    for (const auto& p : chain) {
        int s = sgn(p.leading());
        if (!plus_inf && p.degree() % 2 != 0) s = -s;
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

int count_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("count_real_roots of zero polynomial");
    if (p.degree() == 0) return 0;
    RatPoly sf = divmod(p, poly_gcd(p, p.derivative())).first;
    auto chain = signed_remainder_chain(sf, sf.derivative());
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

int cauchy_index(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) throw std::domain_error("cauchy_index with zero denominator");
    if (num.is_zero()) return 0;
    auto chain = signed_remainder_chain(den, num);
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

namespace {

// q(i*mu) split into real and imaginary parts as polynomials in mu.
std::pair<RatPoly, RatPoly> imaginary_axis_parts(const RatPoly& q) {
    // i^j cycles (1, i, -1, -i)
    std::vector<Rat> re(q.coeffs().size(), Rat(0)), im(q.coeffs().size(), Rat(0));
    for (size_t j = 0; j < q.coeffs().size(); ++j) {
        switch (j % 4) {
            case 0: re[j] = q[j]; break;
            case 1: im[j] = q[j]; break;
            case 2: re[j] = -q[j]; break;
            case 3: im[j] = -q[j]; break;
        }
    }
    return {RatPoly(std::move(re)), RatPoly(std::move(im))};
}

// Counts for one squarefree factor (distinct roots).
HalfPlaneCertificate::Factor squarefree_halfplane(const RatPoly& q) {
    HalfPlaneCertificate::Factor fac;
    fac.degree = q.degree();
    // Degree is made odd so that q~(i*mu) points in an imaginary direction at
    // both ends of the real line; then the net argument change is exactly pi
    // times the Cauchy index of Re/Im for the reduced pair.
    int e = (q.degree() % 2 == 0) ? 1 : 0;
    RatPoly qt = q;
    if (e) qt = qt * RatPoly({Rat(1), Rat(1)});  // extra root at -1
    auto [A, B] = imaginary_axis_parts(qt);

    RatPoly g = A.is_zero() ? B.monic() : (B.is_zero() ? A.monic() : poly_gcd(A, B));
    long axis = 0;
    if (g.degree() > 0) axis = count_real_roots(g);
    fac.axis_roots = axis;

    RatPoly a1 = A.is_zero() ? RatPoly() : divmod(A, g).first;
    RatPoly b1 = divmod(B, g).first;
    int index = b1.is_zero() ? 0 : cauchy_index(a1, b1);
    fac.cauchy_index = index - e;  // minus the contribution of the root at -1

    long off_axis = q.degree() - axis;
    long diff = fac.cauchy_index;  // n_minus - n_plus among off-axis roots
    if ((off_axis + diff) % 2 != 0 || std::abs(diff) > off_axis)
        throw CertificationError("halfplane_root_counts: inconsistent index data");
    return fac;
}

}  // namespace

HalfPlaneCounts halfplane_root_counts(const RatPoly& p, HalfPlaneCertificate* cert) {
    if (p.is_zero()) throw std::domain_error("halfplane_root_counts of zero polynomial");
    HalfPlaneCounts counts;
    HalfPlaneCertificate local;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        auto fac = squarefree_halfplane(factor);
        fac.multiplicity = mult;
        long off_axis = fac.degree - fac.axis_roots;
        long n_minus = (off_axis + fac.cauchy_index) / 2;
        long n_plus = off_axis - n_minus;
        counts.zero += mult * fac.axis_roots;
        counts.plus += mult * n_plus;
        counts.minus += mult * n_minus;
        local.factors.push_back(std::move(fac));
    }
    if (counts.zero + counts.plus + counts.minus != p.degree())
        throw CertificationError("halfplane_root_counts: counts do not sum to degree");
    if (cert) *cert = std::move(local);
    return counts;
}

int count_unit_circle_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("count_unit_circle_roots of zero polynomial");
    if (p.degree() == 0) return 0;
    int count = 0;
    // z = -1 is the one circle point missed by the Cayley parameterization
    if (p.eval(Rat(-1)) == 0) ++count;

    // q(mu) = (1-i*mu)^n p((1+i*mu)/(1-i*mu)); roots of p on the circle away
    // from -1 correspond to real roots of gcd(Re q, Im q).
    long n = p.degree();
    RatPoly re_acc, im_acc;  // accumulates sum_j c_j (1+i mu)^j (1-i mu)^{n-j}
    RatPoly one = RatPoly::constant(Rat(1));
    // powers of (1+i mu) and (1-i mu) as (re, im) pairs
    std::vector<std::pair<RatPoly, RatPoly>> plus_pow{{one, RatPoly()}};
    std::vector<std::pair<RatPoly, RatPoly>> minus_pow{{one, RatPoly()}};
    RatPoly mu = RatPoly::monomial(1);
    for (long j = 1; j <= n; ++j) {
        auto [pr, pi] = plus_pow.back();
        plus_pow.emplace_back(pr - pi * mu, pi + pr * mu);
        auto [mr, mi] = minus_pow.back();
        minus_pow.emplace_back(mr + mi * mu, mi - mr * mu);
    }
    for (long j = 0; j <= n; ++j) {
        if (p[j] == 0) continue;
        const auto& [ar, ai] = plus_pow[j];
        const auto& [br, bi] = minus_pow[n - j];
        re_acc = re_acc + p[j] * (ar * br - ai * bi);
        im_acc = im_acc + p[j] * (ar * bi + ai * br);
    }
    RatPoly g = re_acc.is_zero() ? im_acc : (im_acc.is_zero() ? re_acc : poly_gcd(re_acc, im_acc));
    if (g.degree() > 0) count += count_real_roots(g);
    return count;
}

std::string to_string(const RatPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long j = p.degree(); j >= 0; --j) {
        const Rat& c = p[static_cast<size_t>(j)];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat a = abs(c);
        if (a != 1 || j == 0) os << a.get_str();
        if (j > 0) {
            if (a != 1) os << "*";
            os << "x";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return os.str();
}

}  // namespace homflow
