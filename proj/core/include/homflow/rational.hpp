#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace homflow {

/// Exact rational scalar. All algebraic decision paths in the library use
/// this type; floating point is confined to diagnostics and reporting.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q", "p", or a plain decimal like "0.25" into an exact rational.
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        // decimal literal: shift the point away and divide by a power of ten
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_len = text.size() - dot - 1;
        if (digits == "-" || digits == "+" || digits.empty())
            throw std::invalid_argument("bad decimal literal: " + text);
        Int num(digits, 10);
        Int den(1);
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw std::invalid_argument("zero denominator: " + text);
    // mpq_set_str does not reduce the fraction
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Reduced rational from a possibly non-coprime pair. The raw two-argument
/// mpq_class constructor does not canonicalize, and GMP comparisons assume
/// canonical form, so variable numerator/denominator pairs must go through
/// here.
inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses a comma-separated list of rationals, e.g. "1/2,0,3".
inline std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_rat(text.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

/// Complex number with exact rational real and imaginary parts.
struct CRat {
    Rat re{0}, im{0};

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator*(const Rat& s, const CRat& a) { return {s * a.re, s * a.im}; }
    friend CRat operator/(const CRat& a, const Rat& s) {
        if (s == 0) throw std::domain_error("division by zero");
        return {a.re / s, a.im / s};
    }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    CRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }
};

/// Thrown when an exact certificate that should hold by construction fails.
class CertificationError : public std::runtime_error {
  public:
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homflow
