#include "torsor/exactla.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace torsor;
using namespace torsor::testing;

namespace {

// independent oracle: Leibniz permutation expansion, n <= 4
FieldElement leibniz_det(const Matrix& m) {
    const size_t n = m.rows();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    FieldElement acc = FieldElement::zero(m.field());
    do {
        // permutation sign by counting inversions
        int inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        FieldElement term = FieldElement::one(m.field());
        for (size_t i = 0; i < n; ++i) term *= m.at(i, perm[i]);
        acc = inv % 2 == 0 ? acc + term : acc - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

Matrix from_ints(const FieldPtr& K, std::vector<std::vector<long>> rows) {
    Matrix m(K, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = FieldElement::from_int(K, rows[i][j]);
    return m;
}

} // namespace

TEST_CASE("rref basics") {
    auto K = eisenstein_field();
    Matrix id = Matrix::identity(K, 3);
    RrefResult r = rref(id);
    CHECK(r.rank == 3);
    CHECK(r.pivots == std::vector<size_t>{0, 1, 2});
    CHECK(r.reduced == id);

    Matrix z(K, 2, 3);
    r = rref(z);
    CHECK(r.rank == 0);
    CHECK(r.pivots.empty());

    Matrix prop = from_ints(K, {{1, 2}, {2, 4}});
    r = rref(prop);
    CHECK(r.rank == 1);
    CHECK(r.reduced.at(0, 0).is_one());
    CHECK(r.reduced.at(0, 1) == FieldElement::from_int(K, 2));
    CHECK(r.reduced.at(1, 0).is_zero());
    CHECK(r.reduced.at(1, 1).is_zero());
}

TEST_CASE("kernel bases") {
    auto K = eisenstein_field();
    Matrix z(K, 2, 3);
    VectorFamily kb = kernel_basis(z);
    CHECK(kb.size() == 3);
    CHECK(kernel_basis(Matrix::identity(K, 4)).size() == 0);

    Matrix m = from_ints(K, {{1, 1, 0}, {0, 0, 1}});
    kb = kernel_basis(m);
    REQUIRE(kb.size() == 1);
    CHECK(kb.vectors[0][0] == -FieldElement::one(K));
    CHECK(kb.vectors[0][1] == FieldElement::one(K));
    CHECK(kb.vectors[0][2].is_zero());
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
    auto K = eisenstein_field();
    ElementGen gen(K, 11);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m(K, 4, 6);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 6; ++j) m.at(i, j) = gen.next();
        VectorFamily kb = kernel_basis(m);
        CHECK(rank(m) + kb.size() == 6);
        for (const auto& v : kb.vectors)
            for (size_t i = 0; i < 4; ++i) {
                FieldElement s = FieldElement::zero(K);
                for (size_t j = 0; j < 6; ++j) s += m.at(i, j) * v[j];
                CHECK(s.is_zero());
            }
    }
}

TEST_CASE("image pivot columns and preimages") {
    auto K = eisenstein_field();
    Matrix id = Matrix::identity(K, 3);
    ImagePivot ip = image_pivot_columns(id);
    CHECK(ip.image.size() == 3);
    CHECK(ip.preimages.size() == 3);

    Matrix z(K, 3, 2);
    ip = image_pivot_columns(z);
    CHECK(ip.image.size() == 0);

    Matrix m = from_ints(K, {{1, 2}, {2, 4}});
    ip = image_pivot_columns(m);
    REQUIRE(ip.image.size() == 1);
    CHECK(ip.image.vectors[0][0].is_one());
    CHECK(ip.image.vectors[0][1] == FieldElement::from_int(K, 2));
    CHECK(ip.preimages.vectors[0][0].is_one());

    // m * preimage = image column, exactly
    ElementGen gen(K, 5);
    Matrix r = gen.next_matrix(5);
    ip = image_pivot_columns(r);
    for (size_t k = 0; k < ip.image.size(); ++k)
        for (size_t i = 0; i < 5; ++i) {
            FieldElement s = FieldElement::zero(K);
            for (size_t j = 0; j < 5; ++j) s += r.at(i, j) * ip.preimages.vectors[k][j];
            CHECK(s == ip.image.vectors[k][i]);
        }
}

TEST_CASE("determinant against the permutation-expansion oracle") {
    auto K = eisenstein_field();
    CHECK(determinant(Matrix::identity(K, 3)).is_one());
    Matrix sw = from_ints(K, {{0, 1}, {1, 0}});
    CHECK(determinant(sw) == -FieldElement::one(K));
    CHECK_THROWS(determinant(Matrix(K, 2, 3)));

    ElementGen gen(K, 23);
    for (int trial = 0; trial < 8; ++trial) {
        Matrix m = gen.next_matrix(4);
        CHECK(determinant(m) == leibniz_det(m));
    }
}

TEST_CASE("determinant multiplicativity") {
    auto K = degree6_field();
    ElementGen gen(K, 9);
    for (int trial = 0; trial < 4; ++trial) {
        Matrix a = gen.next_matrix(3), b = gen.next_matrix(3);
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
    }
}

TEST_CASE("basis change determinant") {
    auto K = eisenstein_field();
    ElementGen gen(K, 31);
    // [v/v] = 1
    Matrix v = gen.next_invertible(3);
    VectorFamily fam = columns_of(v);
    CHECK(basis_change_det(fam, fam).is_one());

    // u = 2 v1 against v = (v1) in dimension 1
    VectorFamily v1, u1;
    v1.ambient_dim = u1.ambient_dim = 1;
    v1.vectors.push_back({FieldElement::from_int(K, 3)});
    u1.vectors.push_back({FieldElement::from_int(K, 6)});
    CHECK(basis_change_det(u1, v1) == FieldElement::from_int(K, 2));

    // u = v * A gives [u/v] = det A
    Matrix A = gen.next_invertible(3);
    Matrix u = v * A;
    CHECK(basis_change_det(columns_of(u), fam) == determinant(A));

    // dependent u gives 0, not an error
    Matrix dep = u;
    for (size_t i = 0; i < 3; ++i) dep.at(i, 2) = dep.at(i, 0) + dep.at(i, 1);
    // fix columns so the span stays inside span(v) (it does: columns of u + sums)
    CHECK(basis_change_det(columns_of(dep), fam).is_zero());

    // u outside span(v) is an error
    VectorFamily small;
    small.ambient_dim = 3;
    small.vectors.push_back(v.column(0));
    small.vectors.push_back(v.column(1));
    VectorFamily probe;
    probe.ambient_dim = 3;
    probe.vectors.push_back(v.column(0));
    std::vector<FieldElement> outside = {FieldElement::one(K), FieldElement::zero(K),
                                         FieldElement::zero(K)};
    // make sure "outside" really is outside; if not, perturb deterministically
    Matrix sm = family_matrix(K, small);
    if (in_column_span(sm, outside)) outside[2] = FieldElement::one(K);
    if (!in_column_span(sm, outside)) {
        probe.vectors.push_back(outside);
        CHECK_THROWS_AS(basis_change_det(probe, small), SpanError);
    }
}

TEST_CASE("cocycle identity for basis ratios") {
    auto K = eisenstein_field();
    ElementGen gen(K, 77);
    Matrix w = gen.next_invertible(3);
    Matrix a = gen.next_invertible(3), b = gen.next_invertible(3);
    Matrix v = w * a, u = v * b;
    VectorFamily fu = columns_of(u), fv = columns_of(v), fw = columns_of(w);
    CHECK(basis_change_det(fu, fv) * basis_change_det(fv, fw) == basis_change_det(fu, fw));
}

TEST_CASE("solve with free variables zero") {
    auto K = eisenstein_field();
    Matrix id = Matrix::identity(K, 3);
    std::vector<FieldElement> b = {FieldElement::from_int(K, 5), FieldElement::from_int(K, -1),
                                   FieldElement::from_int(K, 2)};
    CHECK(solve(id, b) == b);

    Matrix z(K, 2, 2);
    std::vector<FieldElement> zero2 = {FieldElement::zero(K), FieldElement::zero(K)};
    CHECK(solve(z, zero2) == zero2);

    Matrix m = from_ints(K, {{1, 1}, {0, 0}});
    std::vector<FieldElement> rhs = {FieldElement::from_int(K, 3), FieldElement::zero(K)};
    auto x = solve(m, rhs);
    CHECK(x[0] == FieldElement::from_int(K, 3));
    CHECK(x[1].is_zero());

    std::vector<FieldElement> bad = {FieldElement::zero(K), FieldElement::one(K)};
    CHECK_THROWS_AS(solve(m, bad), SpanError);

    // brute-force check: kernel vs solve on small random systems
    ElementGen gen(K, 13);
    for (int trial = 0; trial < 6; ++trial) {
        Matrix r(K, 3, 4);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 4; ++j) r.at(i, j) = gen.next();
        VectorFamily kb = kernel_basis(r);
        for (const auto& v : kb.vectors) {
            // r * v = 0 means solving r x = r*(anything) stays consistent
            std::vector<FieldElement> rhs2(3, FieldElement::zero(K));
            for (size_t i = 0; i < 3; ++i)
                for (size_t j = 0; j < 4; ++j) rhs2[i] += r.at(i, j) * v[j];
            for (const auto& x2 : rhs2) CHECK(x2.is_zero());
        }
    }
}
