#include "torsor/exactla.hpp"

namespace torsor {

RrefResult rref(const Matrix& m) {
    RrefResult res{m, {}, 0};
    Matrix& a = res.reduced;
    const size_t rows = a.rows(), cols = a.cols();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = rows;
        for (size_t i = r; i < rows; ++i)
            if (!a.at(i, c).is_zero()) { p = i; break; }
        if (p == rows) continue;
        if (p != r)
            for (size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        FieldElement inv = a.at(r, c).inverse();
        for (size_t j = c; j < cols; ++j) a.at(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            FieldElement f = a.at(i, c);
            for (size_t j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return rref(m).rank;
}

VectorFamily kernel_basis(const Matrix& m) {
    VectorFamily fam;
    fam.ambient_dim = m.cols();
    if (m.cols() == 0) return fam;
    const FieldPtr& K = m.field();
    if (m.rows() == 0) {
        for (size_t j = 0; j < m.cols(); ++j) {
            std::vector<FieldElement> v(m.cols(), FieldElement::zero(K));
            v[j] = FieldElement::one(K);
            fam.vectors.push_back(std::move(v));
        }
        return fam;
    }
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : r.pivots) is_pivot[c] = true;
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<FieldElement> v(m.cols(), FieldElement::zero(K));
        v[c] = FieldElement::one(K);
        for (size_t i = 0; i < r.pivots.size(); ++i)
            v[r.pivots[i]] = -r.reduced.at(i, c);
        fam.vectors.push_back(std::move(v));
    }
    return fam;
}

ImagePivot image_pivot_columns(const Matrix& m) {
    ImagePivot out;
    out.image.ambient_dim = m.rows();
    out.preimages.ambient_dim = m.cols();
    if (m.rows() == 0 || m.cols() == 0) return out;
    RrefResult r = rref(m);
    const FieldPtr& K = m.field();
    for (size_t c : r.pivots) {
        out.image.vectors.push_back(m.column(c));
        std::vector<FieldElement> e(m.cols(), FieldElement::zero(K));
        e[c] = FieldElement::one(K);
        out.preimages.vectors.push_back(std::move(e));
    }
    return out;
}

FieldElement determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const FieldPtr& K = m.field();
    const size_t n = m.rows();
    if (n == 0) return FieldElement::one(K);
    Matrix a = m;
    FieldElement det = FieldElement::one(K);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t i = c; i < n; ++i)
            if (!a.at(i, c).is_zero()) { p = i; break; }
        if (p == n) return FieldElement::zero(K);
        if (p != c) {
            for (size_t j = c; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
            det = -det;
        }
        det *= a.at(c, c);
        FieldElement inv = a.at(c, c).inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (a.at(i, c).is_zero()) continue;
            FieldElement f = a.at(i, c) * inv;
            for (size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return det;
}

namespace {

// rref of [m | B] returning coordinates of the B columns in terms of pivot
// columns of m; nullopt for a column outside the span
struct SolveAll {
    std::vector<std::optional<std::vector<FieldElement>>> sols;  // per rhs, length cols(m)
};

SolveAll solve_all(const Matrix& m, const VectorFamily& rhs) {
    const FieldPtr& K = m.field();
    const size_t rows = m.rows(), cols = m.cols(), extra = rhs.size();
    Matrix aug(K, rows, cols + extra);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) aug.at(i, j) = m.at(i, j);
    for (size_t k = 0; k < extra; ++k)
        for (size_t i = 0; i < rows; ++i) aug.at(i, cols + k) = rhs.vectors[k][i];

    // eliminate using pivots in the first `cols` columns only
    size_t r = 0;
    std::vector<size_t> pivots;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = rows;
        for (size_t i = r; i < rows; ++i)
            if (!aug.at(i, c).is_zero()) { p = i; break; }
        if (p == rows) continue;
        if (p != r)
            for (size_t j = 0; j < cols + extra; ++j) std::swap(aug.at(p, j), aug.at(r, j));
        FieldElement inv = aug.at(r, c).inverse();
        for (size_t j = c; j < cols + extra; ++j) aug.at(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || aug.at(i, c).is_zero()) continue;
            FieldElement f = aug.at(i, c);
            for (size_t j = c; j < cols + extra; ++j) aug.at(i, j) -= f * aug.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    SolveAll out;
    for (size_t k = 0; k < extra; ++k) {
        bool consistent = true;
        for (size_t i = r; i < rows; ++i)
            if (!aug.at(i, cols + k).is_zero()) { consistent = false; break; }
        if (!consistent) {
            out.sols.emplace_back(std::nullopt);
            continue;
        }
        std::vector<FieldElement> x(cols, FieldElement::zero(K));
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols + k);
        out.sols.emplace_back(std::move(x));
    }
    return out;
}

} // namespace

std::vector<FieldElement> solve(const Matrix& m, const std::vector<FieldElement>& rhs) {
    VectorFamily fam;
    fam.ambient_dim = m.rows();
    fam.vectors.push_back(rhs);
    auto all = solve_all(m, fam);
    if (!all.sols[0]) throw SpanError("inconsistent linear system");
    return *all.sols[0];
}

VectorFamily solve(const Matrix& m, const VectorFamily& rhs) {
    auto all = solve_all(m, rhs);
    VectorFamily out;
    out.ambient_dim = m.cols();
    for (auto& s : all.sols) {
        if (!s) throw SpanError("inconsistent linear system");
        out.vectors.push_back(std::move(*s));
    }
    return out;
}

bool in_column_span(const Matrix& m, const std::vector<FieldElement>& v) {
    VectorFamily fam;
    fam.ambient_dim = m.rows();
    fam.vectors.push_back(v);
    return solve_all(m, fam).sols[0].has_value();
}

FieldElement basis_change_det(const VectorFamily& u, const VectorFamily& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("basis-change determinant needs equal family sizes");
    if (u.ambient_dim != v.ambient_dim)
        throw std::invalid_argument("ambient dimension mismatch");
    if (v.size() == 0) {
        throw std::invalid_argument("empty basis");
    }
    const FieldPtr& K = v.vectors[0][0].field();
    Matrix vm = family_matrix(K, v);
    if (rank(vm) != v.size()) throw SpanError("v is not linearly independent");
    auto all = solve_all(vm, u);
    Matrix coords(K, v.size(), u.size());
    for (size_t k = 0; k < u.size(); ++k) {
        if (!all.sols[k]) throw SpanError("vector outside span(v)");
        for (size_t i = 0; i < v.size(); ++i) coords.at(i, k) = (*all.sols[k])[i];
    }
    return determinant(coords);   // 0 exactly when u is dependent
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const FieldPtr& K = m.field();
    const size_t n = m.rows();
    Matrix aug(K, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = FieldElement::one(K);
    }
    RrefResult r = rref(aug);
    if (r.rank != n || r.pivots.back() >= n) throw SpanError("singular matrix");
    Matrix out(K, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = r.reduced.at(i, n + j);
    return out;
}

} // namespace torsor
