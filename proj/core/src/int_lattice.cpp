#include "homflow/int_lattice.hpp"

#include <stdexcept>
#include <utility>

namespace homflow {

namespace {

// Shared HNF worker. Row operations are mirrored onto *transform when given;
// zero rows are kept in place (they end up at the bottom).
size_t hnf_inplace(IntMat& m, IntMat* transform) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    auto row_op = [&](size_t i, size_t k, const Int& q) {  // row i -= q * row k
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[k][j];
        if (transform)
            for (size_t j = 0; j < (*transform)[i].size(); ++j)
                (*transform)[i][j] -= q * (*transform)[k][j];
    };
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        while (true) {
            size_t pivot = rows;
            for (size_t i = row; i < rows; ++i)
                if (m[i][col] != 0 && (pivot == rows || abs(m[i][col]) < abs(m[pivot][col]))) pivot = i;
            if (pivot == rows) break;
            if (pivot != row) {
                std::swap(m[row], m[pivot]);
                if (transform) std::swap((*transform)[row], (*transform)[pivot]);
            }
            bool clear = true;
            for (size_t i = row + 1; i < rows; ++i) {
                if (m[i][col] == 0) continue;
                Int q = m[i][col] / m[row][col];
                if (q != 0) row_op(i, row, q);
                if (m[i][col] != 0) clear = false;
            }
            if (clear) break;
        }
        if (m[row][col] == 0) continue;
        if (m[row][col] < 0) {
            for (size_t j = 0; j < cols; ++j) m[row][j] = -m[row][j];
            if (transform)
                for (auto& x : (*transform)[row]) x = -x;
        }
        for (size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
            if (q != 0) row_op(i, row, q);
        }
        ++row;
    }
    return row;  // rank; rows [row, rows) are zero
}

}  // namespace

IntMat hermite_normal_form(IntMat m) {
    size_t rank = hnf_inplace(m, nullptr);
    m.resize(rank);
    return m;
}

IntMat integer_kernel(const IntMat& m) {
    if (m.empty()) throw std::invalid_argument("integer_kernel of empty matrix");
    // Row-reduce the transpose with a tracked unimodular transform U:
    // U * m^T = H. Rows of U matching zero rows of H span the kernel lattice
    // (saturated, since U is unimodular).
    IntMat mt = mat_transpose(m);
    size_t n = mt.size();
    IntMat u(n, IntVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    size_t rank = hnf_inplace(mt, &u);
    IntMat ker(u.begin() + static_cast<long>(rank), u.end());
    return hermite_normal_form(std::move(ker));
}

bool is_surjective_over_Z(const IntMat& m) {
    if (m.empty()) return true;
    // the image lattice is the row lattice of the transpose; surjectivity
    // means it is all of Z^rows, i.e. the HNF is the identity
    IntMat h = hermite_normal_form(mat_transpose(m));
    size_t rows = m.size();
    if (h.size() != rows) return false;  // rank deficient
    Int prod(1);
    size_t col = 0;
    for (size_t i = 0; i < rows; ++i) {
        while (col < h[i].size() && h[i][col] == 0) ++col;
        if (col == h[i].size()) return false;
        prod *= h[i][col];
    }
    return prod == 1;
}

IntVec mat_apply(const IntMat& m, const IntVec& v) {
    IntVec r(m.size(), Int(0));
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    }
    return r;
}

IntMat mat_transpose(const IntMat& m) {
    if (m.empty()) return m;
    IntMat t(m[0].size(), IntVec(m.size(), Int(0)));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

}  // namespace homflow
