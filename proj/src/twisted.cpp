#include "torsor/twisted.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace torsor {

namespace {

std::string word_key(const Word& w) {
    std::ostringstream os;
    for (const auto& [l, e] : w.letters) os << l << (e == 1 ? "+" : "-") << "|";
    return os.str();
}

// rep(word monodromy) with memoisation per assembly run
class RepCache {
public:
    RepCache(const MarkedLocalSystem& ls, const Representation& rep) : ls_(ls), rep_(rep) {}

    const Matrix& get(const Word& w) {
        std::string key = word_key(w);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Matrix m = rep_(word_monodromy(ls_, w));
        return cache_.emplace(std::move(key), std::move(m)).first->second;
    }

private:
    const MarkedLocalSystem& ls_;
    const Representation& rep_;
    std::map<std::string, Matrix> cache_;
};

} // namespace

size_t TwistedChainComplex::block_index(int degree, const std::string& cell_id) const {
    int i = cw->index_of(degree, cell_id);
    if (i < 0) throw std::invalid_argument("cell not in complex: " + cell_id);
    return static_cast<size_t>(i) * rank;
}

TwistedChainComplex assemble_twisted(const CWComplexData& cw, const MarkedLocalSystem& ls,
                                     const Representation& rep) {
    TwistedChainComplex t;
    t.cw = &cw;
    t.field = ls.field;
    t.rank = rep.dim();
    RepCache cache(ls, rep);
    const int r = t.rank;
    for (int d = 1; d <= 3; ++d) {
        Matrix m(t.field, cw.count(d - 1) * r, cw.count(d) * r);
        for (size_t j = 0; j < cw.count(d); ++j) {
            for (const auto& term : cw.cells[d][j].boundary) {
                int i0 = cw.index_of(d - 1, term.target);
                if (i0 < 0)
                    throw std::invalid_argument("boundary target missing: " + term.target);
                const Matrix& R = cache.get(term.path);
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b) {
                        const FieldElement& x = R.at(a, b);
                        if (x.is_zero()) continue;
                        auto& dst = m.at(i0 * r + a, j * r + b);
                        dst = term.sign == 1 ? dst + x : dst - x;
                    }
            }
        }
        t.boundary[d] = std::move(m);
    }
    for (int d = 2; d <= 3; ++d) {
        if (t.dim(d) == 0 || t.dim(d - 2) == 0) continue;
        Matrix p = t.boundary[d - 1] * t.boundary[d];
        if (!p.is_zero())
            throw std::runtime_error("twisted dd != 0: local system is inconsistent with the complex (degree " +
                                     std::to_string(d) + ")");
    }
    return t;
}

std::array<long, 4> twisted_betti(const TwistedChainComplex& t) {
    std::array<long, 4> rk{};
    for (int d = 1; d <= 3; ++d)
        rk[d] = t.dim(d) == 0 || t.dim(d - 1) == 0 ? 0 : static_cast<long>(rank(t.boundary[d]));
    std::array<long, 4> out{};
    for (int d = 0; d <= 3; ++d) {
        long next = d + 1 <= 3 ? rk[d + 1] : 0;
        out[d] = static_cast<long>(t.dim(d)) - rk[d] - next;
    }
    return out;
}

// ---------------------------------------------------------------------------

FlatSectionBasis invariant_sections(const CWComplexData& cw, const MarkedLocalSystem& ls,
                                    const Representation& rep,
                                    const std::vector<std::string>& component_cells,
                                    const std::string& base_vertex) {
    CWComplexData sub = cw.subcomplex(component_cells);
    const FieldPtr& K = ls.field;
    const int r = rep.dim();
    const size_t nv = sub.count(0);
    if (sub.index_of(0, base_vertex) < 0)
        throw std::invalid_argument("base vertex not in component: " + base_vertex);

    // flatness across every 1-cell: s(head) = rep(mon(e)) s(tail)
    RepCache cache(ls, rep);
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& e : sub.cells[1]) {
        std::string head, tail;
        for (const auto& term : e.boundary)
            (term.sign == 1 ? head : tail) = term.target;
        Word w;
        w.letters.push_back({e.id, 1});
        const Matrix& R = cache.get(w);
        int hi = sub.index_of(0, head), ti = sub.index_of(0, tail);
        for (int a = 0; a < r; ++a) {
            std::vector<FieldElement> row(nv * r, FieldElement::zero(K));
            row[hi * r + a] += FieldElement::one(K);
            for (int b = 0; b < r; ++b) row[ti * r + b] -= R.at(a, b);
            rows.push_back(std::move(row));
        }
    }
    Matrix sys(K, rows.size(), nv * r);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < nv * r; ++j) sys.at(i, j) = rows[i][j];
    VectorFamily kb = kernel_basis(sys);

    FlatSectionBasis out;
    out.base = base_vertex;
    out.at_base.ambient_dim = r;
    for (const auto& v : kb.vectors) {
        std::map<std::string, std::vector<FieldElement>> vals;
        for (size_t i = 0; i < nv; ++i) {
            std::vector<FieldElement> s(v.begin() + i * r, v.begin() + (i + 1) * r);
            vals.emplace(sub.cells[0][i].id, std::move(s));
        }
        out.at_base.vectors.push_back(vals.at(base_vertex));
        out.at_vertices.push_back(std::move(vals));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<FieldElement> apply_mat(const Matrix& m, const std::vector<FieldElement>& v) {
    std::vector<FieldElement> out(m.rows(), FieldElement::zero(m.field()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) out[i] += m.at(i, j) * v[j];
    return out;
}

// section value at the anchor of every cell of the subcomplex, propagated
// through the stored boundary-term paths; asserts path-independence
std::map<std::string, std::vector<FieldElement>> section_at_cells(
    const CWComplexData& sub, const MarkedLocalSystem& ls, const Representation& rep,
    const std::map<std::string, std::vector<FieldElement>>& vertex_values) {
    auto values = vertex_values;
    RepCache cache(ls, rep);
    for (int d = 1; d <= 2; ++d) {
        for (const auto& c : sub.cells[d]) {
            std::vector<std::vector<FieldElement>> candidates;
            for (const auto& term : c.boundary) {
                auto it = values.find(term.target);
                if (it == values.end()) continue;
                Matrix R = inverse(cache.get(term.path));
                candidates.push_back(apply_mat(R, it->second));
            }
            if (candidates.empty())
                throw std::runtime_error("cell without transportable boundary: " + c.id);
            for (size_t k = 1; k < candidates.size(); ++k)
                for (size_t i = 0; i < candidates[0].size(); ++i)
                    if (!(candidates[0][i] == candidates[k][i]))
                        throw std::runtime_error("flat-section transport mismatch at " + c.id);
            values.emplace(c.id, candidates[0]);
        }
    }
    return values;
}

} // namespace

PortiBases porti_bases(const TwistedChainComplex& t, const LinkExteriorComplex& cx,
                       const MarkedLocalSystem& ls, const Representation& rep,
                       const std::vector<FlatSectionBasis>& sections,
                       const std::string& loop_name) {
    const FieldPtr& K = t.field;
    const int r = t.rank;
    PortiBases out;
    out.h1.ambient_dim = t.dim(1);
    out.h2.ambient_dim = t.dim(2);

    for (size_t ci = 0; ci < cx.boundary_components.size(); ++ci) {
        const auto& bc = cx.boundary_components[ci];
        CWComplexData sub = cx.cw.subcomplex(bc.cells);
        const PeripheralLoop* loop = nullptr;
        for (const auto& pl : cx.peripheral_loops)
            if (pl.component == bc.name && (loop_name.empty() || pl.name == loop_name))
                loop = &pl;
        if (!loop)
            throw std::invalid_argument("no peripheral loop named '" + loop_name +
                                        "' on component " + bc.name);
        std::set<std::string> compcells(bc.cells.begin(), bc.cells.end());

        for (const auto& vertex_vals : sections[ci].at_vertices) {
            auto vals = section_at_cells(sub, ls, rep, vertex_vals);
            // h2: cap with the fundamental class of this torus
            std::vector<FieldElement> h2(t.dim(2), FieldElement::zero(K));
            for (const auto& [id, co] : cx.fundamental_class_2) {
                if (!compcells.count(id) || co == 0) continue;
                size_t base = t.block_index(2, id);
                const auto& v = vals.at(id);
                for (int a = 0; a < r; ++a)
                    h2[base + a] = v[a].scaled(Rational(co));
            }
            out.h2.vectors.push_back(std::move(h2));
            // h1: cap with the peripheral cycle
            std::vector<FieldElement> h1(t.dim(1), FieldElement::zero(K));
            for (const auto& [id, co] : loop->cycle) {
                if (co == 0) continue;
                size_t base = t.block_index(1, id);
                const auto& v = vals.at(id);
                for (int a = 0; a < r; ++a)
                    h1[base + a] = v[a].scaled(Rational(co));
            }
            out.h1.vectors.push_back(std::move(h1));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// are the chains cycles whose classes extend a basis of Img to an independent
// family in Ker/Img?
bool independent_in_homology(const Matrix& d_this, const Matrix& d_next,
                             const VectorFamily& chains) {
    if (chains.size() == 0) return true;
    // cycles?
    for (const auto& v : chains.vectors) {
        auto img = apply_mat(d_this, v);
        for (const auto& x : img)
            if (!x.is_zero()) return false;
    }
    ImagePivot ip = image_pivot_columns(d_next);
    VectorFamily fam = ip.image;
    fam.ambient_dim = chains.ambient_dim;
    for (const auto& v : chains.vectors) fam.vectors.push_back(v);
    const FieldPtr& K = d_this.field();
    return rank(family_matrix(K, fam)) == fam.size();
}

} // namespace

RegularityReport check_regularity(const TwistedChainComplex& t, const PortiBases& pb,
                                  long boundary_h0_dim) {
    RegularityReport rep;
    rep.betti = twisted_betti(t);
    rep.boundary_h0_dim = boundary_h0_dim;
    long r = rep.betti[1];
    bool cond1 = rep.betti[0] == 0 && rep.betti[3] == 0 && rep.betti[1] == rep.betti[2];
    bool cond2 = boundary_h0_dim == r;
    rep.h2_map_iso = cond1 && static_cast<long>(pb.h2.size()) == r &&
                     independent_in_homology(t.boundary[2], t.boundary[3], pb.h2);
    rep.h1_map_iso = cond1 && static_cast<long>(pb.h1.size()) == r &&
                     independent_in_homology(t.boundary[1], t.boundary[2], pb.h1);
    rep.boundary_regular = cond1 && cond2 && rep.h2_map_iso;
    rep.gamma_regular = rep.boundary_regular && rep.h1_map_iso;
    return rep;
}

int sign_alpha(const std::array<long, 4>& rank_B, const std::array<long, 4>& rank_C) {
    long alpha = 0;
    for (int i = 0; i < 4; ++i) {
        long s = i % 2 == 0 ? 1 : -1;
        alpha += rank_B[i] * (rank_B[i] - s) / 2;
    }
    for (int i = 0; i < 4; i += 2)
        for (int j = 1; j < 4; j += 2)
            if (i < j) alpha += rank_C[i] * rank_C[j];
    return alpha % 2 == 0 ? 1 : -1;
}

TorsionFormulaOutput torsion_formula(const TwistedChainComplex& t,
                                     const std::array<const VectorFamily*, 4>& h) {
    const FieldPtr& K = t.field;
    TorsionFormulaOutput out;
    out.value = FieldElement::zero(K);

    std::array<VectorFamily, 4> img;   // basis of B_k inside C_k
    std::array<VectorFamily, 4> b;     // preimages, inside C_{k+1}
    std::array<long, 4> rank_B{}, rank_C{};
    for (int k = 0; k < 4; ++k) {
        rank_C[k] = static_cast<long>(t.dim(k));
        if (k + 1 <= 3 && t.dim(k + 1) > 0 && t.dim(k) > 0) {
            ImagePivot ip = image_pivot_columns(t.boundary[k + 1]);
            img[k] = std::move(ip.image);
            b[k] = std::move(ip.preimages);
        } else {
            img[k].ambient_dim = t.dim(k);
            b[k].ambient_dim = k + 1 <= 3 ? t.dim(k + 1) : 0;
        }
        rank_B[k] = static_cast<long>(img[k].size());
    }
    out.sign_alpha = sign_alpha(rank_B, rank_C);

    std::array<FieldElement, 4> dets{FieldElement::one(K), FieldElement::one(K),
                                     FieldElement::one(K), FieldElement::one(K)};
    for (int k = 0; k < 4; ++k) {
        // family  d b_k | h_k | b_{k-1}  expressed in the cell basis of C_k
        VectorFamily fam;
        fam.ambient_dim = t.dim(k);
        for (const auto& v : img[k].vectors) fam.vectors.push_back(v);
        if (h[k])
            for (const auto& v : h[k]->vectors) fam.vectors.push_back(v);
        if (k >= 1)
            for (const auto& v : b[k - 1].vectors) fam.vectors.push_back(v);
        if (fam.size() != t.dim(k)) {
            out.failed_degree = k;
            return out;   // family cannot be a basis; torsion 0
        }
        if (t.dim(k) == 0) continue;
        dets[k] = determinant(family_matrix(K, fam));
        if (dets[k].is_zero()) {
            out.failed_degree = k;
            return out;
        }
    }
    out.families_complete = true;
    // tau = eps * prod_k [c_k / X_k]^{(-1)^k} = eps * prod det(X_k)^{(-1)^{k+1}}
    FieldElement tau = out.sign_alpha == 1 ? FieldElement::one(K) : -FieldElement::one(K);
    for (int k = 0; k < 4; ++k)
        tau = k % 2 == 1 ? tau * dets[k] : tau * dets[k].inverse();
    out.value = tau;
    return out;
}

// ---------------------------------------------------------------------------

HomologyOrientation default_homology_orientation(const CWComplexData& cw) {
    FieldPtr Q = NumberField::rationals();
    MarkedLocalSystem triv;
    triv.name = "orientation-helper";
    triv.field = Q;
    triv.group = GroupTag::GL;
    triv.matrix_dim = 1;
    for (const auto& e : cw.cells[1]) triv.monodromy.emplace(e.id, Matrix::identity(Q, 1));
    TwistedChainComplex t = assemble_twisted(cw, triv, trivial_rep(Q, 1));

    HomologyOrientation o;
    for (int k = 0; k < 4; ++k) {
        VectorFamily basis;
        basis.ambient_dim = t.dim(k);
        // cycles: kernel of d_k (all of C_0 in degree 0)
        VectorFamily cycles;
        if (k == 0 || t.dim(k) == 0) {
            cycles.ambient_dim = t.dim(k);
            for (size_t j = 0; j < t.dim(k); ++j) {
                std::vector<FieldElement> e(t.dim(k), FieldElement::zero(Q));
                e[j] = FieldElement::one(Q);
                cycles.vectors.push_back(std::move(e));
            }
        } else {
            cycles = kernel_basis(t.boundary[k]);
        }
        VectorFamily span;
        span.ambient_dim = t.dim(k);
        if (k + 1 <= 3 && t.dim(k + 1) > 0) span = image_pivot_columns(t.boundary[k + 1]).image;
        size_t img_rank = span.size();
        for (const auto& z : cycles.vectors) {
            VectorFamily test = span;
            test.vectors.push_back(z);
            if (rank(family_matrix(Q, test)) == test.size()) {
                span.vectors.push_back(z);
                basis.vectors.push_back(z);
            }
        }
        (void)img_rank;
        o.basis[k] = std::move(basis);
    }
    o.sign = 1;
    return o;
}

int orientation_sign(const CWComplexData& cw, int rank_r, const HomologyOrientation& o) {
    if (rank_r % 2 == 0) return 1;
    FieldPtr Q = NumberField::rationals();
    MarkedLocalSystem triv;
    triv.name = "parity";
    triv.field = Q;
    triv.group = GroupTag::GL;
    triv.matrix_dim = 1;
    for (const auto& e : cw.cells[1]) triv.monodromy.emplace(e.id, Matrix::identity(Q, 1));
    TwistedChainComplex t = assemble_twisted(cw, triv, trivial_rep(Q, 1));
    std::array<const VectorFamily*, 4> h{&o.basis[0], &o.basis[1], &o.basis[2], &o.basis[3]};
    TorsionFormulaOutput f = torsion_formula(t, h);
    if (!f.families_complete || f.value.is_zero())
        throw std::invalid_argument("orientation data is not a homology basis");
    int s = sign(f.value.rational_part());
    return s * o.sign;
}

// ---------------------------------------------------------------------------

TorsionResult torsion(const LinkExteriorComplex& cx, const MarkedLocalSystem& ls,
                      const Representation& rep, const std::string& loop_name,
                      const HomologyOrientation& o, bool fill_embeddings) {
    TwistedChainComplex t = assemble_twisted(cx.cw, ls, rep);
    std::vector<FlatSectionBasis> sections;
    long h0_dim = 0;
    for (const auto& bc : cx.boundary_components) {
        // base at the first 0-cell of the component
        std::string base;
        for (const auto& id : bc.cells)
            if (cx.cw.index_of(0, id) >= 0) { base = id; break; }
        if (base.empty()) throw std::invalid_argument("boundary component without vertices");
        sections.push_back(invariant_sections(cx.cw, ls, rep, bc.cells, base));
        h0_dim += static_cast<long>(sections.back().at_base.size());
    }
    PortiBases pb = porti_bases(t, cx, ls, rep, sections, loop_name);
    TorsionResult res;
    res.regular = check_regularity(t, pb, h0_dim);
    res.sign_orientation = orientation_sign(cx.cw, t.rank, o);
    res.value = FieldElement::zero(t.field);
    if (res.regular.boundary_regular) {
        std::array<const VectorFamily*, 4> h{nullptr, &pb.h1, &pb.h2, nullptr};
        TorsionFormulaOutput f = torsion_formula(t, h);
        res.sign_alpha = f.sign_alpha;
        if (f.failed_degree == 2 || f.failed_degree == 0 || f.failed_degree == 3)
            throw std::logic_error(
                "torsion family degenerate in degree " + std::to_string(f.failed_degree) +
                " despite boundary regularity");
        if (f.families_complete) {
            res.value = res.sign_orientation == 1 ? f.value : -f.value;
        } else {
            res.value = FieldElement::zero(t.field);   // gamma-regularity fails
        }
    } else {
        std::array<long, 4> rank_B{}, rank_C{};
        for (int k = 0; k < 4; ++k) rank_C[k] = static_cast<long>(t.dim(k));
        res.sign_alpha = sign_alpha(rank_B, rank_C);
    }
    if (fill_embeddings) res.embeddings = all_embeddings(res.value);
    return res;
}

TorsionResult adjoint_torsion(const LinkExteriorComplex& cx, const MarkedLocalSystem& ls,
                              const std::string& loop_name, const HomologyOrientation& o) {
    Representation rep;
    switch (ls.group) {
        case GroupTag::GSp4: rep = adjoint_rep_pgsp4(ls.field); break;
        case GroupTag::PGL2: rep = sl2_irrep(ls.field, 3); break;
        default:
            throw std::invalid_argument("adjoint torsion needs a GSp(4) or PGL(2) system");
    }
    return torsion(cx, ls, rep, loop_name, o);
}

DecompositionCheck decomposition_check(const LinkExteriorComplex& cx,
                                       const MarkedLocalSystem& pgl2_system,
                                       const std::string& lie_type,
                                       const std::string& loop_name) {
    if (pgl2_system.group != GroupTag::PGL2)
        throw std::invalid_argument("decomposition check needs a PGL(2) system");
    if (lie_type != "C2" && lie_type != "A1")
        throw std::invalid_argument("only C2 (and the trivial A1) are supported end to end");
    DecompositionCheck out;
    out.exponents = parse_lie_type_exponents(lie_type);
    HomologyOrientation o = default_homology_orientation(cx.cw);

    const FieldPtr& K = pgl2_system.field;
    if (lie_type == "C2") {
        // embed and take the PGSp4 adjoint
        MarkedLocalSystem embedded;
        embedded.name = pgl2_system.name + " via principal embedding";
        embedded.field = K;
        embedded.group = GroupTag::GSp4;
        embedded.matrix_dim = 4;
        for (const auto& [id, m] : pgl2_system.monodromy)
            embedded.monodromy.emplace(id, principal_embedding_c2(m));
        out.lhs = adjoint_torsion(cx, embedded, loop_name, o).value;
    } else {
        out.lhs = torsion(cx, pgl2_system, sl2_irrep(K, 3), loop_name, o).value;
    }

    out.rhs = FieldElement::one(K);
    for (int m : out.exponents) {
        TorsionResult f = torsion(cx, pgl2_system, sl2_irrep(K, 2 * m + 1), loop_name, o);
        out.factors.push_back(f.value);
        out.rhs *= f.value;
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

long commutant_dimension(const MarkedLocalSystem& ls, const Representation& rep,
                         const std::vector<std::string>& generators) {
    const FieldPtr& K = ls.field;
    const int n = rep.dim();
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& g : generators) {
        Matrix R = rep(ls.mono(g));
        // T R - R T = 0, unknowns T_{ij} row-major
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<FieldElement> row(n * n, FieldElement::zero(K));
                for (int k = 0; k < n; ++k) {
                    row[i * n + k] += R.at(k, j);
                    row[k * n + j] -= R.at(i, k);
                }
                rows.push_back(std::move(row));
            }
    }
    Matrix sys(K, rows.size(), n * n);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < static_cast<size_t>(n * n); ++j) sys.at(i, j) = rows[i][j];
    return static_cast<long>(n) * n - static_cast<long>(rank(sys));
}

} // namespace torsor
