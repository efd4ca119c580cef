#pragma once

#include "torsor/numfield.hpp"

#include <vector>

namespace torsor {

// dense matrix over a number field, row-major
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, size_t rows, size_t cols);   // zero matrix

    static Matrix identity(const FieldPtr& field, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    FieldElement& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const FieldElement& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    FieldElement& operator()(size_t i, size_t j) { return at(i, j); }
    const FieldElement& operator()(size_t i, size_t j) const { return at(i, j); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix transpose() const;
    Matrix scaled(const FieldElement& c) const;
    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Matrix& o) const;

    std::vector<FieldElement> column(size_t j) const;
    std::vector<FieldElement> row_vec(size_t i) const;

    // block-diagonal join
    static Matrix direct_sum(const Matrix& a, const Matrix& b);

private:
    FieldPtr field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

// ordered family of coordinate vectors; order is significant
struct VectorFamily {
    size_t ambient_dim = 0;
    std::vector<std::vector<FieldElement>> vectors;

    size_t size() const { return vectors.size(); }
    void push(std::vector<FieldElement> v);
};

// columns of m as a family
VectorFamily columns_of(const Matrix& m);
// matrix whose columns are the family vectors
Matrix family_matrix(const FieldPtr& field, const VectorFamily& fam);

} // namespace torsor
