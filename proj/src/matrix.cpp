#include "torsor/matrix.hpp"

#include <stdexcept>

namespace torsor {

Matrix::Matrix(FieldPtr field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      e_(rows * cols, FieldElement::zero(field_)) {}

Matrix Matrix::identity(const FieldPtr& field, size_t n) {
    Matrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(field);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix out(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const FieldElement& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const FieldElement& b = o.at(k, j);
                if (!b.is_zero()) out.at(i, j) += a * b;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch in sum");
    Matrix out = *this;
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] += o.e_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch in difference");
    Matrix out = *this;
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] -= o.e_[i];
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Matrix Matrix::scaled(const FieldElement& c) const {
    Matrix out = *this;
    for (auto& x : out.e_) x *= c;
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

std::vector<FieldElement> Matrix::column(size_t j) const {
    std::vector<FieldElement> out;
    out.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
    return out;
}

std::vector<FieldElement> Matrix::row_vec(size_t i) const {
    std::vector<FieldElement> out(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
    return out;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

void VectorFamily::push(std::vector<FieldElement> v) {
    if (!vectors.empty() && v.size() != ambient_dim)
        throw std::invalid_argument("vector length does not match ambient dimension");
    if (vectors.empty() && ambient_dim == 0) ambient_dim = v.size();
    if (v.size() != ambient_dim)
        throw std::invalid_argument("vector length does not match ambient dimension");
    vectors.push_back(std::move(v));
}

VectorFamily columns_of(const Matrix& m) {
    VectorFamily fam;
    fam.ambient_dim = m.rows();
    for (size_t j = 0; j < m.cols(); ++j) fam.vectors.push_back(m.column(j));
    return fam;
}

Matrix family_matrix(const FieldPtr& field, const VectorFamily& fam) {
    Matrix out(field, fam.ambient_dim, fam.vectors.size());
    for (size_t j = 0; j < fam.vectors.size(); ++j)
        for (size_t i = 0; i < fam.ambient_dim; ++i) out.at(i, j) = fam.vectors[j][i];
    return out;
}

} // namespace torsor
