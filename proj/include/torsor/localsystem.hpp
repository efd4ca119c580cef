#pragma once

#include "torsor/cw.hpp"
#include "torsor/exactla.hpp"
#include "torsor/matrix.hpp"

#include <functional>
#include <map>
#include <string>

namespace torsor {

enum class GroupTag { GL, GSp4, PGL2 };

std::string group_tag_name(GroupTag g);
GroupTag parse_group_tag(const std::string& s);

// monodromy assignment on oriented 1-cells; matrices transport fibre
// coordinates from the tail marking to the head marking
struct MarkedLocalSystem {
    std::string name;
    FieldPtr field;
    GroupTag group = GroupTag::GL;
    int matrix_dim = 0;
    std::map<std::string, Matrix> monodromy;
    std::map<std::string, FieldElement> similitude;   // GSp only

    const Matrix& mono(const std::string& one_cell) const;
};

// ordered product over the word; traversal order a1 ... ak gives
// mon(ak)^sk ... mon(a1)^s1
Matrix word_monodromy(const MarkedLocalSystem& ls, const Word& w);

// the 4x4 symplectic form of the GSp_4 convention, as integers
Matrix symplectic_form_J(const FieldPtr& field);

// exact check of g^T J g = lambda J
bool validate_gsp(const Matrix& g, const FieldElement& lambda);

// every monodromy invertible; GSp relations against stored similitudes
ValidationReport validate_local_system(const MarkedLocalSystem& ls);

// linear representation applied to group representatives
class Representation {
public:
    Representation() = default;
    Representation(std::string name, int dim, std::function<Matrix(const Matrix&)> apply)
        : name_(std::move(name)), dim_(dim), apply_(std::move(apply)) {}

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    Matrix operator()(const Matrix& g) const { return apply_(g); }

private:
    std::string name_;
    int dim_ = 0;
    std::function<Matrix(const Matrix&)> apply_;
};

// fixed ordered basis of sp_4 = pgsp_4: canonical echelon kernel basis of
// X^T J + J X = 0 with the 16 entries of X ordered row-major
std::vector<Matrix> sp4_basis(const FieldPtr& field);

// adjoint representation of GSp_4 on sp_4: X -> g X g^{-1}, dim 10
Representation adjoint_rep_pgsp4(const FieldPtr& field);

// n-dimensional irreducible of SL_2 on degree-(n-1) symmetric tensors,
// normalised by det(g)^{-(n-1)/2}; n odd makes it a PGL_2 representation
Representation sl2_irrep(const FieldPtr& field, int n);

Representation trivial_rep(const FieldPtr& field, int r);

// block sum of two representations of the same source group
Representation direct_sum_rep(const Representation& a, const Representation& b);

// group-level principal embedding PGL_2 -> PGSp_4 over fields containing
// w with w^2 - w + 1 = 0; implemented by factoring into elementary matrices
// and exponentiating the principal sl_2 images
Matrix principal_embedding_c2(const Matrix& g, const FieldElement& omega);
// convenience: uses the field generator as omega (requires min poly w^2-w+1)
Matrix principal_embedding_c2(const Matrix& g);

// composed system: monodromy = rep(monodromy)
MarkedLocalSystem pullback_local_system(const MarkedLocalSystem& ls, const Representation& rep);

// block-diagonal direct sum of two systems over the same field and cells
MarkedLocalSystem direct_sum_system(const MarkedLocalSystem& a, const MarkedLocalSystem& b);

// extends a system across an elementary expansion (retraction transport)
MarkedLocalSystem extend_over_expansion(const MarkedLocalSystem& ls,
                                        const std::map<std::string, Word>& new_one_cells);

// exponents of the simple Lie algebras (Lie type -> exponent list)
enum class LieType { A, B, C, D, E6, E7, E8, F4, G2 };
std::vector<int> lie_exponents(LieType type, int rank_n);
std::vector<int> parse_lie_type_exponents(const std::string& name);  // "A3", "C2", "E8", ...

} // namespace torsor
