#pragma once

#include "homflow/rational.hpp"

#include <cstdint>

namespace homflow {

/// Element a + b*sqrt(disc) of a real quadratic field, exact coefficients.
/// disc is a positive nonsquare integer shared by all values of one system;
/// mixing discriminants throws. Signs, comparisons and floors are exact, so
/// the hyperbolic-orbit geometry built on this type carries no rounding
/// drift at any horizon.
struct Quad {
    Rat a{0}, b{0};
    long disc = 0;  // 0 marks a plain rational

    Quad() = default;
    Quad(Rat ra) : a(std::move(ra)) {}
    Quad(long v) : a(Rat(v)) {}
    Quad(Rat ra, Rat rb, long d) : a(std::move(ra)), b(std::move(rb)), disc(d) {
        if (b == 0) disc = 0;
    }

    bool is_rational() const { return b == 0; }
    Quad conj() const { return {a, -b, disc}; }

    friend Quad operator+(const Quad& x, const Quad& y);
    friend Quad operator-(const Quad& x, const Quad& y);
    friend Quad operator-(const Quad& x);
    friend Quad operator*(const Quad& x, const Quad& y);
    friend Quad operator/(const Quad& x, const Quad& y);
    bool operator==(const Quad& o) const;
};

/// Exact sign: -1, 0, +1.
int quad_sign(const Quad& q);

inline bool operator<(const Quad& x, const Quad& y) { return quad_sign(x - y) < 0; }
inline bool operator<=(const Quad& x, const Quad& y) { return quad_sign(x - y) <= 0; }
inline bool operator>(const Quad& x, const Quad& y) { return quad_sign(x - y) > 0; }
inline bool operator>=(const Quad& x, const Quad& y) { return quad_sign(x - y) >= 0; }

Quad quad_abs(const Quad& q);
Quad quad_pow(const Quad& q, long e);  // negative exponents via exact inverse

/// Exact floor (mpf estimate at sufficient precision, then exact adjust).
Int quad_floor(const Quad& q);

/// Correctly cancels huge opposing a and b parts before rounding.
double quad_to_double(const Quad& q);

/// Point or vector in the plane over one quadratic field.
struct QVec2 {
    Quad x, y;
};

inline QVec2 operator+(const QVec2& u, const QVec2& v) { return {u.x + v.x, u.y + v.y}; }
inline QVec2 operator-(const QVec2& u, const QVec2& v) { return {u.x - v.x, u.y - v.y}; }
inline QVec2 operator*(const Quad& s, const QVec2& v) { return {s * v.x, s * v.y}; }

}  // namespace homflow
