#pragma once

#include "homflow/rat_matrix.hpp"
#include "homflow/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace homflow::lie {

/// Coordinate vector of an algebra element in the defining basis.
using Element = RatVec;

struct ValidationReport {
    struct JacobiViolation {
        size_t i, j, k;
        RatVec residual;  // coordinates of [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
    };
    struct AntisymmetryViolation {
        size_t i, j;
        RatVec residual;  // c(i,j) + c(j,i), or c(i,i)
    };
    std::vector<JacobiViolation> jacobi;
    std::vector<AntisymmetryViolation> antisymmetry;
    bool ok() const { return jacobi.empty() && antisymmetry.empty(); }
};

/// Finite-dimensional real Lie algebra with exact rational structure
/// constants. Constants are stored sparsely for index pairs i < j; the
/// mirrored pair is derived by sign, so antisymmetry holds structurally.
class LieAlgebra {
  public:
    using BracketTable = std::map<std::pair<size_t, size_t>, RatVec>;

    LieAlgebra(size_t dim, std::vector<std::string> labels, BracketTable brackets);

    /// Builds from an explicit dense table c[i][j] = coords of [e_i, e_j].
    /// Antisymmetry defects are recorded in *report (when given) and the
    /// table is antisymmetrized from its i < j part.
    static LieAlgebra from_dense_table(size_t dim, std::vector<std::string> labels,
                                       const std::vector<std::vector<RatVec>>& table,
                                       ValidationReport* report = nullptr);

    size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const BracketTable& brackets() const { return table_; }

    /// Bracket of basis elements, any index order.
    RatVec basis_bracket(size_t i, size_t j) const;

  private:
    size_t dim_;
    std::vector<std::string> labels_;
    BracketTable table_;  // keys i < j only
};

/// Linearly independent span inside a parent algebra, held as the canonical
/// echelon (RREF) basis so equal subspaces compare equal. The parent must
/// outlive the subalgebra.
struct Subalgebra {
    const LieAlgebra* parent = nullptr;
    std::vector<RatVec> basis;

    size_t dimension() const { return basis.size(); }
    bool operator==(const Subalgebra& o) const { return basis == o.basis; }
};

ValidationReport validate(const LieAlgebra& alg);

Element bracket(const LieAlgebra& alg, const Element& x, const Element& y);

/// Matrix of ad(x); column j holds the coordinates of [x, e_j].
RatMatrix ad_matrix(const LieAlgebra& alg, const Element& x);

RatMatrix killing_form(const LieAlgebra& alg);

struct SemisimplicityResult {
    bool semisimple;
    Rat killing_det;  // the Cartan-criterion certificate
};
SemisimplicityResult is_semisimple(const LieAlgebra& alg);

Subalgebra span_subalgebra(const LieAlgebra& alg, const std::vector<RatVec>& vectors);
bool is_bracket_closed(const Subalgebra& sub);

std::vector<Subalgebra> derived_series(const LieAlgebra& alg);
bool is_solvable(const LieAlgebra& alg);

std::vector<Subalgebra> lower_central_series(const LieAlgebra& alg);
bool is_nilpotent_algebra(const LieAlgebra& alg);

Subalgebra centralizer(const LieAlgebra& alg, const Element& s);
Subalgebra center(const LieAlgebra& alg);

}  // namespace homflow::lie
