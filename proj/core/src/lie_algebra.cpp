#include "homflow/lie_algebra.hpp"

#include <stdexcept>

namespace homflow::lie {

LieAlgebra::LieAlgebra(size_t dim, std::vector<std::string> labels, BracketTable brackets)
    : dim_(dim), labels_(std::move(labels)), table_(std::move(brackets)) {
    if (dim_ == 0) throw std::invalid_argument("LieAlgebra: dimension must be positive");
    if (labels_.empty()) {
        labels_.reserve(dim_);
        for (size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    }
    if (labels_.size() != dim_) throw std::invalid_argument("LieAlgebra: label count != dim");
    for (const auto& [key, coeffs] : table_) {
        if (key.first >= key.second || key.second >= dim_)
            throw std::invalid_argument("LieAlgebra: bracket keys must satisfy i < j < dim");
        if (coeffs.size() != dim_)
            throw std::invalid_argument("LieAlgebra: bracket coefficient vector has wrong length");
    }
}

LieAlgebra LieAlgebra::from_dense_table(size_t dim, std::vector<std::string> labels,
                                        const std::vector<std::vector<RatVec>>& table,
                                        ValidationReport* report) {
    if (table.size() != dim) throw std::invalid_argument("dense table has wrong shape");
    BracketTable sparse;
    for (size_t i = 0; i < dim; ++i) {
        if (table[i].size() != dim) throw std::invalid_argument("dense table has wrong shape");
        if (report && !vec_is_zero(table[i][i]))
            report->antisymmetry.push_back({i, i, table[i][i]});
        for (size_t j = i + 1; j < dim; ++j) {
            if (report) {
                RatVec sum = vec_add(table[i][j], table[j][i]);
                if (!vec_is_zero(sum)) report->antisymmetry.push_back({i, j, sum});
            }
            if (!vec_is_zero(table[i][j])) sparse[{i, j}] = table[i][j];
        }
    }
    return LieAlgebra(dim, std::move(labels), std::move(sparse));
}

RatVec LieAlgebra::basis_bracket(size_t i, size_t j) const {
    if (i >= dim_ || j >= dim_) throw std::invalid_argument("basis index out of range");
    if (i == j) return RatVec(dim_, Rat(0));
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = table_.find({i, j});
    if (it == table_.end()) return RatVec(dim_, Rat(0));
    return flip ? vec_scale(Rat(-1), it->second) : it->second;
}

ValidationReport validate(const LieAlgebra& alg) {
    ValidationReport report;
    size_t n = alg.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                RatVec r = vec_add(
                    vec_add(bracket(alg, alg.basis_bracket(i, j), unit_vec(n, k)),
                            bracket(alg, alg.basis_bracket(j, k), unit_vec(n, i))),
                    bracket(alg, alg.basis_bracket(k, i), unit_vec(n, j)));
                if (!vec_is_zero(r)) report.jacobi.push_back({i, j, k, std::move(r)});
            }
    return report;
}

Element bracket(const LieAlgebra& alg, const Element& x, const Element& y) {
    size_t n = alg.dim();
    if (x.size() != n || y.size() != n)
        throw std::invalid_argument("bracket: element dimension mismatch");
    RatVec out(n, Rat(0));
    for (const auto& [key, coeffs] : alg.brackets()) {
        auto [i, j] = key;
        Rat w = x[i] * y[j] - x[j] * y[i];
        if (w == 0) continue;
        for (size_t t = 0; t < n; ++t)
            if (coeffs[t] != 0) out[t] += w * coeffs[t];
    }
    return out;
}

RatMatrix ad_matrix(const LieAlgebra& alg, const Element& x) {
    size_t n = alg.dim();
    if (x.size() != n) throw std::invalid_argument("ad_matrix: element dimension mismatch");
    RatMatrix m(n, n);
    for (size_t j = 0; j < n; ++j) {
        RatVec col = bracket(alg, x, unit_vec(n, j));
        for (size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

RatMatrix killing_form(const LieAlgebra& alg) {
    size_t n = alg.dim();
    std::vector<RatMatrix> ads;
    ads.reserve(n);
    for (size_t i = 0; i < n; ++i) ads.push_back(ad_matrix(alg, unit_vec(n, i)));
    RatMatrix k(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat t(0);
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b) t += ads[i](a, b) * ads[j](b, a);
            k(i, j) = t;
            k(j, i) = t;
        }
    return k;
}

SemisimplicityResult is_semisimple(const LieAlgebra& alg) {
    Rat det = determinant(killing_form(alg));
    return {det != 0, det};
}

Subalgebra span_subalgebra(const LieAlgebra& alg, const std::vector<RatVec>& vectors) {
    Subalgebra sub;
    sub.parent = &alg;
    if (!vectors.empty()) sub.basis = row_space_basis(from_rows(vectors, alg.dim()));
    return sub;
}

bool is_bracket_closed(const Subalgebra& sub) {
    const LieAlgebra& alg = *sub.parent;
    if (sub.basis.empty()) return true;
    size_t base_rank = sub.basis.size();
    for (size_t i = 0; i < sub.basis.size(); ++i)
        for (size_t j = i + 1; j < sub.basis.size(); ++j) {
            std::vector<RatVec> rows = sub.basis;
            rows.push_back(bracket(alg, sub.basis[i], sub.basis[j]));
            if (rank(from_rows(rows, alg.dim())) != base_rank) return false;
        }
    return true;
}

namespace {

std::vector<Subalgebra> series(const LieAlgebra& alg, bool derived) {
    std::vector<Subalgebra> chain;
    std::vector<RatVec> full;
    for (size_t i = 0; i < alg.dim(); ++i) full.push_back(unit_vec(alg.dim(), i));
    chain.push_back(span_subalgebra(alg, full));
    while (true) {
        const Subalgebra& prev = chain.back();
        const std::vector<RatVec>& left = derived ? prev.basis : full;
        std::vector<RatVec> products;
        for (const auto& x : left)
            for (const auto& y : prev.basis) {
                RatVec b = bracket(alg, x, y);
                if (!vec_is_zero(b)) products.push_back(std::move(b));
            }
        Subalgebra next = span_subalgebra(alg, products);
        if (next.dimension() == prev.dimension()) {
            // stabilized without reaching zero
            chain.push_back(std::move(next));
            break;
        }
        bool zero = next.dimension() == 0;
        chain.push_back(std::move(next));
        if (zero) break;
    }
    return chain;
}

}  // namespace

std::vector<Subalgebra> derived_series(const LieAlgebra& alg) { return series(alg, true); }

bool is_solvable(const LieAlgebra& alg) { return derived_series(alg).back().dimension() == 0; }

std::vector<Subalgebra> lower_central_series(const LieAlgebra& alg) { return series(alg, false); }

bool is_nilpotent_algebra(const LieAlgebra& alg) {
    return lower_central_series(alg).back().dimension() == 0;
}

Subalgebra centralizer(const LieAlgebra& alg, const Element& s) {
    RatMatrix ad_s = ad_matrix(alg, s);
    return span_subalgebra(alg, kernel_basis(ad_s));
}

Subalgebra center(const LieAlgebra& alg) {
    size_t n = alg.dim();
    // stack all ad(e_i) rows: v is central iff [e_i, v] = 0 for all i
    RatMatrix stacked(n * n, n);
    for (size_t i = 0; i < n; ++i) {
        RatMatrix adi = ad_matrix(alg, unit_vec(n, i));
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) stacked(i * n + r, c) = adi(r, c);
    }
    return span_subalgebra(alg, kernel_basis(stacked));
}

}  // namespace homflow::lie
