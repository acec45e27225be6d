#pragma once

#include "homflow/lie_algebra.hpp"
#include "homflow/polynomial.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace homflow::flows {

enum class FlowTag { QuasiUnipotent, PartiallyHyperbolic };

/// Exact classification certificate of a flow generator.
struct FlowClass {
    FlowTag tag;
    HalfPlaneCounts counts;  // root counts of char(ad X) by real part
    RatPoly char_poly;
    HalfPlaneCertificate certificate;
};

FlowClass classify_flow(const lie::LieAlgebra& alg, const lie::Element& x);

/// Numeric invariant-subspace bases pinned to the exact root counts.
/// The tag-level decision never depends on the floating-point phase.
struct SpectralSplitting {
    HalfPlaneCounts counts;
    std::vector<std::vector<double>> p_zero, p_plus, p_minus;  // orthonormal bases
    double invariance_residual = 0;  // max |(I-P) ad(X) v| over subspace bases
    double grading_residual = 0;     // max bracket component outside the graded target
    double tolerance_used = 0;       // eigenvalue class tolerance that matched the counts
    HalfPlaneCertificate certificate;
};

SpectralSplitting spectral_splitting(const lie::LieAlgebra& alg, const lie::Element& x);

/// Exact additive Jordan decomposition x = s + n inside the algebra.
struct JordanPair {
    lie::Element s, n;
    RatPoly min_poly_s;  // minimal polynomial of ad(s); squarefree, certified
};

JordanPair jordan_chevalley(const lie::LieAlgebra& alg, const lie::Element& x);

/// Generators of the commuting semisimple/unipotent one-parameter factors.
struct GroupJordan {
    lie::Element c_generator, u_generator;
};
GroupJordan group_jordan(const lie::LieAlgebra& alg, const lie::Element& x);

struct Sl2Triple {
    lie::Element a, n_plus, n_minus;
};

/// Completes a nilpotent n_plus of a semisimple algebra to an sl2 triple
/// with [a, n+-] = +-n+-, [n+, n-] = a; when s is given all solves are
/// restricted to the centralizer of s and the triple commutes with s.
/// Every bracket relation is certified with exact arithmetic.
Sl2Triple sl2_embed(const lie::LieAlgebra& alg, const lie::Element& n_plus,
                    const std::optional<lie::Element>& s = std::nullopt);

}  // namespace homflow::flows
