#include "homflow/rat_matrix.hpp"

#include <stdexcept>

namespace homflow {

RatMatrix RatMatrix::identity(size_t n) {
    RatMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    RatMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    RatMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    RatMatrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Rat& aik = a(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
    RatMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
    return r;
}

RatVec RatMatrix::apply(const RatVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix/vector shape mismatch");
    RatVec r(rows_, Rat(0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

Rat RatMatrix::trace() const {
    Rat t(0);
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

RatMatrix RatMatrix::pow(unsigned e) const {
    RatMatrix result = identity(rows_);
    RatMatrix base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1u;
    }
    return result;
}

std::vector<size_t> rref_inplace(RatMatrix& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        Rat inv = 1 / m(row, col);
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(RatMatrix m) { return rref_inplace(m).size(); }

std::vector<RatVec> row_space_basis(const RatMatrix& m) {
    RatMatrix r = m;
    auto pivots = rref_inplace(r);
    std::vector<RatVec> basis;
    for (size_t i = 0; i < pivots.size(); ++i) {
        RatVec v(r.cols());
        for (size_t j = 0; j < r.cols(); ++j) v[j] = r(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<RatVec> kernel_basis(const RatMatrix& m) {
    RatMatrix r = m;
    auto pivots = rref_inplace(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVec v(m.cols(), Rat(0));
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref_inplace(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // row [0 ... 0 | 1]
    RatVec x(a.cols(), Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref_inplace(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    RatMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Rat determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    size_t n = m.rows();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        while (sel < n && m(sel, col) == 0) ++sel;
        if (sel == n) return Rat(0);
        if (sel != col) {
            for (size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        Rat inv = 1 / m(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rat f = m(i, col) * inv;
            for (size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

RatVec characteristic_polynomial(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: not square");
    size_t n = m.rows();
    // Faddeev–LeVerrier: M_1 = M, c_{n-k} = -tr(M_k)/k, M_{k+1} = M (M_k + c_{n-k} I)
    RatVec coeffs(n + 1, Rat(0));
    coeffs[n] = 1;
    RatMatrix mk = m;
    for (size_t k = 1; k <= n; ++k) {
        Rat c = -mk.trace() / Rat(static_cast<long>(k));
        coeffs[n - k] = c;
        if (k == n) break;
        RatMatrix shifted = mk;
        for (size_t i = 0; i < n; ++i) shifted(i, i) += c;
        mk = m * shifted;
    }
    return coeffs;
}

RatVec minimal_polynomial(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("minpoly: not square");
    size_t n = m.rows();
    // rows of `krylov` are vec(I), vec(M), vec(M^2), ...
    std::vector<RatVec> flats;
    RatMatrix p = RatMatrix::identity(n);
    for (size_t k = 0; k <= n; ++k) {
        RatVec f(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) f[i * n + j] = p(i, j);
        flats.push_back(std::move(f));

        if (k > 0 && rank(from_cols(flats, n * n)) == k) {
            // vec(M^k) depends on lower powers: solve for the combination
            RatVec target = flats.back();
            flats.pop_back();
            RatMatrix a = from_cols(flats, n * n);
            auto sol = solve(a, target);
            if (!sol) throw CertificationError("minimal_polynomial: inconsistent Krylov solve");
            RatVec mp(k + 1, Rat(0));
            mp[k] = 1;
            for (size_t j = 0; j < k; ++j) mp[j] = -(*sol)[j];
            return mp;
        }
        p = p * m;
    }
    throw CertificationError("minimal_polynomial: no dependence found up to dimension");
}

RatVec unit_vec(size_t n, size_t i) {
    RatVec v(n, Rat(0));
    v.at(i) = 1;
    return v;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vec_scale(const Rat& s, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

bool vec_is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

RatMatrix from_rows(const std::vector<RatVec>& rows, size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix from_cols(const std::vector<RatVec>& cols, size_t rows) {
    RatMatrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("from_cols: ragged input");
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

}  // namespace homflow
