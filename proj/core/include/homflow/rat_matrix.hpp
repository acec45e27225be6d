#pragma once

#include "homflow/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace homflow {

using RatVec = std::vector<Rat>;

/// Dense matrix over the exact rationals. Row-major, value semantics.
/// Sized for the small dimensions of structure computations (n <~ 30);
/// algorithms favour exactness and determinism over asymptotics.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static RatMatrix identity(size_t n);
    static RatMatrix zero(size_t rows, size_t cols) { return RatMatrix(rows, cols); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const RatMatrix& o) const = default;

    RatMatrix transpose() const;
    bool is_zero() const;

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rat& s, const RatMatrix& a);
    RatVec apply(const RatVec& v) const;

    Rat trace() const;
    RatMatrix pow(unsigned e) const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

/// Row-reduces in place to reduced row echelon form; returns pivot columns.
std::vector<size_t> rref_inplace(RatMatrix& m);

size_t rank(RatMatrix m);

/// Canonical (RREF-row) basis of the row span; deterministic, so equal
/// subspaces yield identical bases.
std::vector<RatVec> row_space_basis(const RatMatrix& m);

/// Canonical kernel basis: one vector per free column of the RREF, free
/// coordinate set to 1.
std::vector<RatVec> kernel_basis(const RatMatrix& m);

/// Solves a x = b. Returns std::nullopt when inconsistent. Under-determined
/// systems take the canonical echelon solution with all free parameters zero.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);

std::optional<RatMatrix> inverse(const RatMatrix& m);

Rat determinant(RatMatrix m);

/// Monic characteristic polynomial, low-degree coefficients first
/// (Faddeev–LeVerrier; exact).
RatVec characteristic_polynomial(const RatMatrix& m);

/// Monic minimal polynomial via the first linear dependence among the
/// flattened powers I, M, M^2, ...
RatVec minimal_polynomial(const RatMatrix& m);

// small vector helpers shared across modules
RatVec unit_vec(size_t n, size_t i);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rat& s, const RatVec& a);
bool vec_is_zero(const RatVec& a);

/// Stacks vectors as rows.
RatMatrix from_rows(const std::vector<RatVec>& rows, size_t cols);
/// Stacks vectors as columns.
RatMatrix from_cols(const std::vector<RatVec>& cols, size_t rows);

}  // namespace homflow
