#pragma once

#include "homflow/rational.hpp"

#include <utility>
#include <vector>

namespace homflow {

/// Univariate polynomial over the exact rationals, coefficients low-degree
/// first. The zero polynomial has an empty coefficient vector.
class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(Rat v) { return RatPoly({std::move(v)}); }
    static RatPoly monomial(size_t deg, Rat v = Rat(1));

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& operator[](size_t i) const { return c_[i]; }
    const Rat& leading() const { return c_.back(); }

    Rat eval(const Rat& x) const;
    RatPoly derivative() const;
    RatPoly monic() const;
    RatPoly negate_variable() const;  // p(-x)

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const Rat& s, const RatPoly& a);
    bool operator==(const RatPoly& o) const = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

/// Quotient/remainder of polynomial long division.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

/// Monic gcd via Euclid's algorithm (subresultant growth is irrelevant at
/// these degrees).
RatPoly poly_gcd(RatPoly a, RatPoly b);

/// Yun's squarefree decomposition: p = lead * prod f_i^{m_i} with the f_i
/// monic, squarefree and pairwise coprime. Only nonconstant factors are
/// returned.
std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p);

/// Number of distinct real roots (Sturm).
int count_real_roots(const RatPoly& p);

/// Cauchy index I_{-inf}^{+inf}(num/den) via a signed-remainder Sturm chain.
int cauchy_index(const RatPoly& num, const RatPoly& den);

/// Exact root counts of a real polynomial by real part, with multiplicity.
struct HalfPlaneCounts {
    long zero = 0;   // Re = 0
    long plus = 0;   // Re > 0
    long minus = 0;  // Re < 0
};

/// Per-squarefree-factor data backing a HalfPlaneCounts result.
struct HalfPlaneCertificate {
    struct Factor {
        long degree = 0;
        unsigned multiplicity = 1;
        long axis_roots = 0;  // distinct roots with Re = 0
        int cauchy_index = 0; // index of the reduced pair, parity-adjusted
    };
    std::vector<Factor> factors;
};

HalfPlaneCounts halfplane_root_counts(const RatPoly& p, HalfPlaneCertificate* cert = nullptr);

/// Number of distinct roots on the unit circle (Cayley transform plus a
/// separate check at z = -1). Exact; used by the hyperbolicity test.
int count_unit_circle_roots(const RatPoly& p);

std::string to_string(const RatPoly& p);

}  // namespace homflow
