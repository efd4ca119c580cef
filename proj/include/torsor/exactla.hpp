#pragma once

#include "torsor/matrix.hpp"

#include <optional>

namespace torsor {

struct RrefResult {
    Matrix reduced;
    std::vector<size_t> pivots;   // strictly increasing column indices
    size_t rank = 0;
};

// reduced row echelon form; pivoting on the first nonzero entry of each
// column (exact arithmetic, so no numerical pivoting)
RrefResult rref(const Matrix& m);

size_t rank(const Matrix& m);

// ordered basis of the right null space, one vector per free column
VectorFamily kernel_basis(const Matrix& m);

struct ImagePivot {
    VectorFamily image;       // pivot columns of m, in column order
    VectorFamily preimages;   // matching standard basis vectors
};
ImagePivot image_pivot_columns(const Matrix& m);

FieldElement determinant(const Matrix& m);

// The basis-change determinant [u/v]: determinant of the coordinate matrix of
// the family u in the basis v. Requires every u_i in span(v) and v linearly
// independent (SpanError otherwise); a linearly dependent u gives 0.
class SpanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
FieldElement basis_change_det(const VectorFamily& u, const VectorFamily& v);

// One particular solution of m x = rhs per right-hand side, free variables
// zero. Throws SpanError if a system is inconsistent.
std::vector<FieldElement> solve(const Matrix& m, const std::vector<FieldElement>& rhs);
VectorFamily solve(const Matrix& m, const VectorFamily& rhs);

// convenience: does v lie in the column span of m?
bool in_column_span(const Matrix& m, const std::vector<FieldElement>& v);

Matrix inverse(const Matrix& m);   // throws SpanError if singular

} // namespace torsor
