#include "torsor/localsystem.hpp"

#include <algorithm>
#include <stdexcept>

namespace torsor {

std::string group_tag_name(GroupTag g) {
    switch (g) {
        case GroupTag::GL: return "GL(n)";
        case GroupTag::GSp4: return "GSp(4)";
        case GroupTag::PGL2: return "PGL(2)";
    }
    return "?";
}

GroupTag parse_group_tag(const std::string& s) {
    if (s == "GSp(4)") return GroupTag::GSp4;
    if (s == "PGL(2)") return GroupTag::PGL2;
    if (s.rfind("GL", 0) == 0) return GroupTag::GL;
    throw std::invalid_argument("unknown group tag: " + s);
}

const Matrix& MarkedLocalSystem::mono(const std::string& one_cell) const {
    auto it = monodromy.find(one_cell);
    if (it == monodromy.end())
        throw std::invalid_argument("no monodromy for 1-cell " + one_cell);
    return it->second;
}

Matrix word_monodromy(const MarkedLocalSystem& ls, const Word& w) {
    Matrix g = Matrix::identity(ls.field, ls.matrix_dim);
    for (const auto& [letter, e] : w.letters) {
        const Matrix& m = ls.mono(letter);
        g = (e == 1 ? m : inverse(m)) * g;
    }
    return g;
}

Matrix symplectic_form_J(const FieldPtr& field) {
    Matrix J(field, 4, 4);
    auto one = FieldElement::one(field);
    J.at(0, 3) = one;
    J.at(1, 2) = -one;
    J.at(2, 1) = one;
    J.at(3, 0) = -one;
    return J;
}

bool validate_gsp(const Matrix& g, const FieldElement& lambda) {
    if (g.rows() != 4 || g.cols() != 4) return false;
    Matrix J = symplectic_form_J(g.field());
    Matrix lhs = g.transpose() * J * g;
    return lhs == J.scaled(lambda);
}

ValidationReport validate_local_system(const MarkedLocalSystem& ls) {
    ValidationReport rep;
    for (const auto& [id, m] : ls.monodromy) {
        if (m.rows() != static_cast<size_t>(ls.matrix_dim) ||
            m.cols() != static_cast<size_t>(ls.matrix_dim)) {
            rep.fail("monodromy of " + id + " has wrong shape");
            continue;
        }
        if (determinant(m).is_zero()) rep.fail("monodromy of " + id + " is singular");
        if (ls.group == GroupTag::GSp4) {
            auto it = ls.similitude.find(id);
            FieldElement lam = it != ls.similitude.end() ? it->second
                                                         : FieldElement::one(ls.field);
            if (!validate_gsp(m, lam))
                rep.fail("similitude relation fails for " + id);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

std::vector<Matrix> sp4_basis(const FieldPtr& field) {
    // 16x16 rational system for X^T J + J X = 0, variables x_{ij} row-major
    static const int J[4][4] = {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    FieldPtr Q = NumberField::rationals();
    Matrix sys(Q, 16, 16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            size_t row = a * 4 + b;
            for (int k = 0; k < 4; ++k) {
                // (X^T J)_{ab} = sum_k X_{ka} J_{kb}
                sys.at(row, k * 4 + a) += FieldElement::from_int(Q, J[k][b]);
                // (J X)_{ab} = sum_k J_{ak} X_{kb}
                sys.at(row, k * 4 + b) += FieldElement::from_int(Q, J[a][k]);
            }
        }
    VectorFamily kb = kernel_basis(sys);
    if (kb.size() != 10) throw std::logic_error("sp4 solution space is not 10-dimensional");
    std::vector<Matrix> out;
    for (const auto& v : kb.vectors) {
        Matrix X(field, 4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                X.at(r, c) = FieldElement::from_rational(field, v[r * 4 + c].rational_part());
        out.push_back(std::move(X));
    }
    return out;
}

Representation adjoint_rep_pgsp4(const FieldPtr& field) {
    auto basis = sp4_basis(field);
    // 16x10 matrix of the basis, reused for coordinate solves
    Matrix B(field, 16, 10);
    for (int j = 0; j < 10; ++j)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) B.at(r * 4 + c, j) = basis[j].at(r, c);
    return Representation(
        "adjoint-pgsp4", 10, [field, basis, B](const Matrix& g) {
            if (g.rows() != 4 || g.cols() != 4)
                throw std::invalid_argument("adjoint rep needs 4x4 input");
            Matrix gi = inverse(g);
            VectorFamily images;
            images.ambient_dim = 16;
            for (int j = 0; j < 10; ++j) {
                Matrix Y = g * basis[j] * gi;
                std::vector<FieldElement> v;
                v.reserve(16);
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) v.push_back(Y.at(r, c));
                images.vectors.push_back(std::move(v));
            }
            VectorFamily coords;
            try {
                coords = solve(B, images);
            } catch (const SpanError&) {
                throw std::invalid_argument("conjugation leaves sp4: input not in GSp4");
            }
            Matrix out(field, 10, 10);
            for (int j = 0; j < 10; ++j)
                for (int i = 0; i < 10; ++i) out.at(i, j) = coords.vectors[j][i];
            return out;
        });
}

Representation sl2_irrep(const FieldPtr& field, int n) {
    if (n < 1) throw std::invalid_argument("sl2 irrep dimension must be >= 1");
    const int d = n - 1;
    return Representation(
        "sl2-irrep(" + std::to_string(n) + ")", n, [field, n, d](const Matrix& g) {
            if (g.rows() != 2 || g.cols() != 2)
                throw std::invalid_argument("sl2 irrep needs 2x2 input");
            const FieldElement &a = g.at(0, 0), &b = g.at(0, 1), &c = g.at(1, 0),
                               &e = g.at(1, 1);
            FieldElement det = a * e - b * c;
            if (det.is_zero()) throw std::invalid_argument("singular 2x2 input");
            // action on the basis u^{d-k} v^k of degree-d symmetric tensors:
            // u -> a u + c v, v -> b u + e v
            Matrix out(field, n, n);
            for (int k = 0; k <= d; ++k) {
                // expand (a u + c v)^{d-k} (b u + e v)^k
                std::vector<FieldElement> col(n, FieldElement::zero(field));
                for (int s = 0; s <= d - k; ++s)
                    for (int t = 0; t <= k; ++t) {
                        mpz_class binom = 1;
                        mpz_bin_uiui(binom.get_mpz_t(), d - k, s);
                        mpz_class b2;
                        mpz_bin_uiui(b2.get_mpz_t(), k, t);
                        binom *= b2;
                        FieldElement term =
                            FieldElement::from_rational(field, Rational(binom));
                        for (int i = 0; i < d - k - s; ++i) term *= a;
                        for (int i = 0; i < s; ++i) term *= c;
                        for (int i = 0; i < k - t; ++i) term *= b;
                        for (int i = 0; i < t; ++i) term *= e;
                        col[s + t] += term;
                    }
                for (int i = 0; i < n; ++i) out.at(i, k) = col[i];
            }
            if (n % 2 == 1) {
                // normalise by det^{(n-1)/2}: scalar-insensitive, lands in SL_n
                FieldElement scale = FieldElement::one(field);
                for (int i = 0; i < (n - 1) / 2; ++i) scale *= det;
                out = out.scaled(scale.inverse());
            }
            return out;
        });
}

Representation trivial_rep(const FieldPtr& field, int r) {
    return Representation("trivial(" + std::to_string(r) + ")", r,
                          [field, r](const Matrix&) { return Matrix::identity(field, r); });
}

Representation direct_sum_rep(const Representation& a, const Representation& b) {
    int dim = a.dim() + b.dim();
    return Representation(a.name() + "+" + b.name(), dim, [a, b](const Matrix& g) {
        return Matrix::direct_sum(a(g), b(g));
    });
}

// ---------------------------------------------------------------------------

namespace {

// exp(x*N) for the principal nilpotents; terminates (N^4 = 0)
Matrix exp_nilpotent(const Matrix& N, const FieldElement& x) {
    const FieldPtr& K = N.field();
    Matrix out = Matrix::identity(K, 4);
    Matrix pw = Matrix::identity(K, 4);
    FieldElement xc = FieldElement::one(K);
    mpz_class fact = 1;
    for (int k = 1; k <= 3; ++k) {
        pw = pw * N;
        xc *= x;
        fact *= k;
        FieldElement coef = xc * FieldElement::from_rational(K, Rational(mpz_class(1), fact));
        out = out + pw.scaled(coef);
    }
    return out;
}

Matrix principal_e_image(const FieldPtr& K, const FieldElement& w) {
    Matrix N(K, 4, 4);
    FieldElement winv = w.inverse();
    N.at(0, 1) = w.scaled(Rational(9, 4));
    N.at(1, 2) = winv.scaled(Rational(-16, 9));
    N.at(2, 3) = w.scaled(Rational(9, 4));
    return N;
}

Matrix principal_f_image(const FieldPtr& K, const FieldElement& w) {
    Matrix N(K, 4, 4);
    FieldElement winv = w.inverse();
    N.at(1, 0) = winv.scaled(Rational(4, 3));
    N.at(2, 1) = w.scaled(Rational(-9, 4));
    N.at(3, 2) = winv.scaled(Rational(4, 3));
    return N;
}

Matrix principal_torus_image(const FieldPtr& K, const FieldElement& q) {
    // diag(q^3, q^2, q, 1), a GSp_4 representative of iota(diag(q,1))
    Matrix D(K, 4, 4);
    FieldElement q2 = q * q;
    D.at(0, 0) = q2 * q;
    D.at(1, 1) = q2;
    D.at(2, 2) = q;
    D.at(3, 3) = FieldElement::one(K);
    return D;
}

} // namespace

Matrix principal_embedding_c2(const Matrix& g, const FieldElement& omega) {
    const FieldPtr& K = g.field();
    if (g.rows() != 2 || g.cols() != 2)
        throw std::invalid_argument("principal embedding needs a 2x2 matrix");
    FieldElement chk = omega * omega - omega + FieldElement::one(K);
    if (!chk.is_zero())
        throw std::invalid_argument("field element does not satisfy w^2 - w + 1 = 0");
    const FieldElement &a = g.at(0, 0), &b = g.at(0, 1), &c = g.at(1, 0), &d = g.at(1, 1);
    FieldElement det = a * d - b * c;
    if (det.is_zero()) throw std::invalid_argument("singular input to principal embedding");
    Matrix E = principal_e_image(K, omega);
    Matrix F = principal_f_image(K, omega);
    FieldElement one = FieldElement::one(K);
    if (c.is_zero()) {
        // g = diag(a, d) * upper(b/d)
        Matrix D = principal_torus_image(K, a / d);
        return D * exp_nilpotent(E, b / d);
    }
    // g = diag(det, 1) * u(x) l(c) u(y) with x = (a/det - 1)/c, y = (d - 1)/c
    FieldElement x = (a / det - one) / c;
    FieldElement y = (d - one) / c;
    Matrix D = principal_torus_image(K, det);
    return D * exp_nilpotent(E, x) * exp_nilpotent(F, c) * exp_nilpotent(E, y);
}

Matrix principal_embedding_c2(const Matrix& g) {
    const FieldPtr& K = g.field();
    if (K->degree() < 2)
        throw std::invalid_argument("field has no generator with w^2 - w + 1 = 0");
    return principal_embedding_c2(g, FieldElement::generator(K));
}

// ---------------------------------------------------------------------------

MarkedLocalSystem pullback_local_system(const MarkedLocalSystem& ls, const Representation& rep) {
    MarkedLocalSystem out;
    out.name = ls.name + " x " + rep.name();
    out.field = ls.field;
    out.group = GroupTag::GL;
    out.matrix_dim = rep.dim();
    for (const auto& [id, m] : ls.monodromy) out.monodromy.emplace(id, rep(m));
    return out;
}

MarkedLocalSystem direct_sum_system(const MarkedLocalSystem& a, const MarkedLocalSystem& b) {
    if (!a.field->same_field(*b.field))
        throw std::invalid_argument("direct sum needs a common field");
    MarkedLocalSystem out;
    out.name = a.name + "+" + b.name;
    out.field = a.field;
    out.group = GroupTag::GL;
    out.matrix_dim = a.matrix_dim + b.matrix_dim;
    for (const auto& [id, m] : a.monodromy)
        out.monodromy.emplace(id, Matrix::direct_sum(m, b.mono(id)));
    return out;
}

MarkedLocalSystem extend_over_expansion(const MarkedLocalSystem& ls,
                                        const std::map<std::string, Word>& new_one_cells) {
    MarkedLocalSystem out = ls;
    for (const auto& [id, w] : new_one_cells) out.monodromy.emplace(id, word_monodromy(ls, w));
    return out;
}

// ---------------------------------------------------------------------------

std::vector<int> lie_exponents(LieType type, int n) {
    auto seq = [](int from, int step, int count) {
        std::vector<int> v;
        for (int i = 0; i < count; ++i) v.push_back(from + step * i);
        return v;
    };
    switch (type) {
        case LieType::A:
            if (n < 1) break;
            return seq(1, 1, n);
        case LieType::B:
        case LieType::C:
            if (n < 1) break;
            return seq(1, 2, n);
        case LieType::D: {
            if (n < 2) break;
            auto v = seq(1, 2, n - 1);
            v.push_back(n - 1);
            return v;
        }
        case LieType::E6: return {1, 4, 5, 7, 8, 11};
        case LieType::E7: return {1, 5, 7, 9, 11, 13, 17};
        case LieType::E8: return {1, 7, 11, 13, 17, 19, 23, 29};
        case LieType::F4: return {1, 5, 7, 11};
        case LieType::G2: return {1, 5};
    }
    throw std::invalid_argument("bad Lie type / rank");
}

std::vector<int> parse_lie_type_exponents(const std::string& name) {
    if (name == "E6") return lie_exponents(LieType::E6, 6);
    if (name == "E7") return lie_exponents(LieType::E7, 7);
    if (name == "E8") return lie_exponents(LieType::E8, 8);
    if (name == "F4") return lie_exponents(LieType::F4, 4);
    if (name == "G2") return lie_exponents(LieType::G2, 2);
    if (name.size() >= 2) {
        int n = std::stoi(name.substr(1));
        switch (name[0]) {
            case 'A': return lie_exponents(LieType::A, n);
            case 'B': return lie_exponents(LieType::B, n);
            case 'C': return lie_exponents(LieType::C, n);
            case 'D': return lie_exponents(LieType::D, n);
        }
    }
    throw std::invalid_argument("bad Lie type: " + name);
}

} // namespace torsor
