#include "homflow/quad_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace homflow {

namespace {

long joint_disc(const Quad& x, const Quad& y) {
    if (x.disc == 0) return y.disc;
    if (y.disc == 0 || x.disc == y.disc) return x.disc;
    throw std::invalid_argument("quadratic field mismatch");
}

int sgn(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

size_t rat_bits(const Rat& r) {
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

}  // namespace

Quad operator+(const Quad& x, const Quad& y) {
    long d = joint_disc(x, y);
    return {x.a + y.a, x.b + y.b, d};
}

Quad operator-(const Quad& x, const Quad& y) {
    long d = joint_disc(x, y);
    return {x.a - y.a, x.b - y.b, d};
}

Quad operator-(const Quad& x) { return {-x.a, -x.b, x.disc}; }

Quad operator*(const Quad& x, const Quad& y) {
    long d = joint_disc(x, y);
    return {x.a * y.a + x.b * y.b * Rat(d), x.a * y.b + x.b * y.a, d};
}

Quad operator/(const Quad& x, const Quad& y) {
    long d = joint_disc(x, y);
    Rat norm = y.a * y.a - y.b * y.b * Rat(d);
    if (norm == 0) throw std::domain_error("division by zero quadratic element");
    Quad num = x * y.conj();
    return {num.a / norm, num.b / norm, d};
}

bool Quad::operator==(const Quad& o) const { return quad_sign(*this - o) == 0; }

int quad_sign(const Quad& q) {
    int sa = sgn(q.a), sb = sgn(q.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: |a| vs |b| sqrt(d) decided by squaring
    Rat diff = q.a * q.a - q.b * q.b * Rat(q.disc);
    int s = sgn(diff);
    return sa > 0 ? s : -s;
}

Quad quad_abs(const Quad& q) { return quad_sign(q) < 0 ? -q : q; }

Quad quad_pow(const Quad& q, long e) {
    if (e < 0) return quad_pow(Quad(Rat(1)) / q, -e);
    Quad result(Rat(1));
    Quad base = q;
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1ul) result = result * base;
        base = base * base;
        n >>= 1ul;
    }
    return result;
}

double quad_to_double(const Quad& q) {
    if (q.b == 0) return q.a.get_d();
    size_t bits = std::max(rat_bits(q.a), rat_bits(q.b)) + 96;
    mpf_class a(q.a, bits), b(q.b, bits), s(0, bits);
    mpf_sqrt_ui(s.get_mpf_t(), static_cast<unsigned long>(q.disc));
    mpf_class v = a + b * s;
    return v.get_d();
}

Int quad_floor(const Quad& q) {
    if (q.b == 0) {
        Int n;
        mpz_fdiv_q(n.get_mpz_t(), q.a.get_num_mpz_t(), q.a.get_den_mpz_t());
        return n;
    }
    size_t bits = std::max(rat_bits(q.a), rat_bits(q.b)) + 96;
    mpf_class a(q.a, bits), b(q.b, bits), s(0, bits);
    mpf_sqrt_ui(s.get_mpf_t(), static_cast<unsigned long>(q.disc));
    mpf_class v = a + b * s;
    mpf_class fl(0, bits);
    mpf_floor(fl.get_mpf_t(), v.get_mpf_t());
    Int n;
    mpz_set_f(n.get_mpz_t(), fl.get_mpf_t());
    // exact adjust; sqrt(disc) is irrational so q is never an integer here
    auto cmp_int = [&q](const Int& k) { return quad_sign(Quad(q.a - Rat(k), q.b, q.disc)); };
    while (cmp_int(n) < 0) --n;
    while (cmp_int(n + 1) > 0) ++n;
    return n;
}

}  // namespace homflow
