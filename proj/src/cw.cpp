#include "torsor/cw.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace torsor {

const Cell* CWComplexData::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return nullptr;
    return &cells[it->second.first][it->second.second];
}

int CWComplexData::index_of(int dim, const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end() || it->second.first != dim) return -1;
    return it->second.second;
}

void CWComplexData::rebuild_index() {
    index_.clear();
    for (int d = 0; d < 4; ++d)
        for (size_t i = 0; i < cells[d].size(); ++i) {
            auto [it, fresh] = index_.emplace(cells[d][i].id, std::make_pair(d, (int)i));
            if (!fresh) throw std::invalid_argument("duplicate cell id: " + cells[d][i].id);
        }
}

std::vector<std::vector<mpz_class>> CWComplexData::integer_boundary(int dim) const {
    const size_t rows = count(dim - 1), cols = count(dim);
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols, 0));
    for (size_t j = 0; j < cols; ++j)
        for (const auto& t : cells[dim][j].boundary) {
            int i = index_of(dim - 1, t.target);
            if (i < 0) throw std::invalid_argument("boundary target not in complex: " + t.target);
            m[i][j] += t.sign;
        }
    return m;
}

CWComplexData CWComplexData::subcomplex(const std::vector<std::string>& ids) const {
    std::set<std::string> keep(ids.begin(), ids.end());
    CWComplexData out;
    for (int d = 0; d < 4; ++d)
        for (const auto& c : cells[d])
            if (keep.count(c.id)) out.cells[d].push_back(c);
    out.rebuild_index();
    // closure check
    for (int d = 1; d < 4; ++d)
        for (const auto& c : out.cells[d])
            for (const auto& t : c.boundary)
                if (!keep.count(t.target))
                    throw std::invalid_argument("subcomplex not closed under boundary at " +
                                                c.id + " -> " + t.target);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m) {
    std::vector<mpz_class> divs;
    if (m.empty() || m[0].empty()) return divs;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        size_t bi = rows, bj = cols;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j)
                if (m[i][j] != 0 &&
                    (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
                    bi = i; bj = j;
                }
        if (bi == rows) break;
        std::swap(m[r], m[bi]);
        for (auto& row : m) std::swap(row[c], row[bj]);
        // reduce the pivot row and column until the pivot divides both
        bool again = false;
        for (size_t i = 0; i < rows && !again; ++i)
            if (i != r && m[i][c] % m[r][c] != 0) again = true;
        for (size_t j = 0; j < cols && !again; ++j)
            if (j != c && m[r][j] % m[r][c] != 0) again = true;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpz_class q = m[i][c] / m[r][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        }
        for (size_t j = 0; j < cols; ++j) {
            if (j == c || m[r][j] == 0) continue;
            mpz_class q = m[r][j] / m[r][c];
            for (size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][c];
        }
        if (again) continue;
        // the pivot must divide the remaining submatrix for the invariant
        // factor chain d1 | d2 | ...; mix in an offending row and redo
        bool mixed = false;
        for (size_t i = r + 1; i < rows && !mixed; ++i)
            for (size_t j = c + 1; j < cols && !mixed; ++j)
                if (m[i][j] % m[r][c] != 0) {
                    for (size_t k = 0; k < cols; ++k) m[r][k] += m[i][k];
                    mixed = true;
                }
        if (mixed) continue;
        divs.push_back(abs(m[r][c]));
        ++r; ++c;
    }
    return divs;
}

namespace {

size_t int_rank(const std::vector<std::vector<mpz_class>>& m) {
    auto divs = smith_invariants(m);
    size_t r = 0;
    for (const auto& d : divs)
        if (d != 0) ++r;
    return r;
}

} // namespace

HomologySummary untwisted_homology(const CWComplexData& cw) {
    HomologySummary out;
    std::array<size_t, 5> rk{};   // rank of d_i, i = 1..3 (0 and 4 are zero maps)
    std::array<std::vector<mpz_class>, 4> sm;
    for (int d = 1; d <= 3; ++d) {
        if (cw.count(d) == 0 || cw.count(d - 1) == 0) { rk[d] = 0; continue; }
        sm[d] = smith_invariants(cw.integer_boundary(d));
        rk[d] = 0;
        for (const auto& x : sm[d])
            if (x != 0) ++rk[d];
    }
    for (int d = 0; d <= 3; ++d) {
        long free_rank = static_cast<long>(cw.count(d)) - static_cast<long>(rk[d]) -
                         static_cast<long>(d + 1 <= 3 ? rk[d + 1] : 0);
        out.free_rank.push_back(free_rank);
        std::vector<mpz_class> tor;
        if (d + 1 <= 3)
            for (const auto& x : sm[d + 1])
                if (x > 1) tor.push_back(x);
        out.torsion.push_back(tor);
    }
    return out;
}

long euler_characteristic(const CWComplexData& cw) {
    long chi = 0;
    for (int d = 0; d < 4; ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(cw.count(d));
    return chi;
}

// ---------------------------------------------------------------------------

ValidationReport validate_complex(const LinkExteriorComplex& c) {
    ValidationReport rep;
    const CWComplexData& cw = c.cw;

    // structural checks on cells
    for (int d = 0; d < 4; ++d)
        for (const auto& cell : cw.cells[d]) {
            if (d == 0 && !cell.boundary.empty())
                rep.fail("0-cell with boundary terms: " + cell.id);
            for (const auto& t : cell.boundary) {
                if (t.sign != 1 && t.sign != -1)
                    rep.fail("sign not +-1 on " + cell.id);
                if (cw.index_of(d - 1, t.target) < 0)
                    rep.fail("boundary target of " + cell.id + " has wrong dimension or is missing: " + t.target);
                for (const auto& [letter, e] : t.path.letters) {
                    if (cw.index_of(1, letter) < 0)
                        rep.fail("path letter is not a 1-cell: " + letter + " (in " + cell.id + ")");
                    if (e != 1 && e != -1) rep.fail("path exponent not +-1 in " + cell.id);
                }
            }
        }
    if (!rep.valid) return rep;

    // dd = 0 over Z
    for (int d = 2; d <= 3; ++d) {
        if (cw.count(d) == 0) continue;
        auto a = cw.integer_boundary(d - 1);
        auto b = cw.integer_boundary(d);
        for (size_t i = 0; i < cw.count(d - 2); ++i)
            for (size_t j = 0; j < cw.count(d); ++j) {
                mpz_class s = 0;
                for (size_t k = 0; k < cw.count(d - 1); ++k) s += a[i][k] * b[k][j];
                if (s != 0)
                    rep.fail("untwisted dd != 0 at (" + cw.cells[d - 2][i].id + ", " +
                             cw.cells[d][j].id + ")");
            }
    }

    // boundary components: closed subcomplexes with chi = 0
    std::set<std::string> all_boundary_cells;
    for (const auto& bc : c.boundary_components) {
        try {
            CWComplexData sub = cw.subcomplex(bc.cells);
            if (euler_characteristic(sub) != 0)
                rep.fail("boundary component " + bc.name + " has nonzero Euler characteristic");
            if (sub.count(3) != 0)
                rep.fail("boundary component " + bc.name + " contains 3-cells");
        } catch (const std::exception& e) {
            rep.fail(std::string("boundary component ") + bc.name + ": " + e.what());
        }
        all_boundary_cells.insert(bc.cells.begin(), bc.cells.end());
    }

    // fundamental class: d3 [M] = [dM] on the 2-cells, and [dM] supported on dM
    {
        auto d3 = cw.integer_boundary(3);
        std::vector<mpz_class> v(cw.count(3), 0);
        for (const auto& [id, co] : c.fundamental_class_3) {
            int j = cw.index_of(3, id);
            if (j < 0) { rep.fail("fundamental_class_3 names unknown 3-cell " + id); continue; }
            v[j] = co;
        }
        for (size_t i = 0; i < cw.count(2); ++i) {
            mpz_class s = 0;
            for (size_t j = 0; j < cw.count(3); ++j) s += d3[i][j] * v[j];
            const std::string& id = cw.cells[2][i].id;
            auto it = c.fundamental_class_2.find(id);
            mpz_class want = it == c.fundamental_class_2.end() ? 0 : mpz_class(it->second);
            if (s != want)
                rep.fail("d3 [M] does not match [dM] at 2-cell " + id);
            if (want != 0 && !all_boundary_cells.count(id))
                rep.fail("[dM] supported outside the boundary components at " + id);
        }
        // [dM] is a 2-cycle
        auto d2 = cw.integer_boundary(2);
        std::vector<mpz_class> w(cw.count(2), 0);
        for (const auto& [id, co] : c.fundamental_class_2) {
            int j = cw.index_of(2, id);
            if (j < 0) { rep.fail("fundamental_class_2 names unknown 2-cell " + id); continue; }
            w[j] = co;
        }
        for (size_t i = 0; i < cw.count(1); ++i) {
            mpz_class s = 0;
            for (size_t j = 0; j < cw.count(2); ++j) s += d2[i][j] * w[j];
            if (s != 0) rep.fail("[dM] is not a cycle at 1-cell " + cw.cells[1][i].id);
        }
    }

    // each [T_i] generates H_2(T_i): nonzero coefficients and gcd 1, with [T_i]
    // in the kernel of d2 restricted (implied by the cycle check above)
    for (const auto& bc : c.boundary_components) {
        mpz_class g = 0;
        bool any = false;
        std::set<std::string> cellset(bc.cells.begin(), bc.cells.end());
        for (const auto& [id, co] : c.fundamental_class_2)
            if (cellset.count(id) && co != 0) {
                any = true;
                g = gcd(g, mpz_class(co));
            }
        if (!any) rep.fail("fundamental class of " + bc.name + " vanishes");
        else if (g != 1) rep.fail("fundamental class of " + bc.name + " is not primitive");
    }

    // peripheral loops: subcomplex of a boundary component, cycle nonzero in H_1
    for (const auto& pl : c.peripheral_loops) {
        const BoundaryComponent* bc = nullptr;
        for (const auto& b : c.boundary_components)
            if (b.name == pl.component) bc = &b;
        if (!bc) { rep.fail("peripheral loop " + pl.name + " names unknown component"); continue; }
        std::set<std::string> comp(bc->cells.begin(), bc->cells.end());
        for (const auto& id : pl.cells)
            if (!comp.count(id))
                rep.fail("peripheral loop " + pl.name + " leaves its boundary component at " + id);
        try {
            CWComplexData sub = cw.subcomplex(pl.cells);
            if (sub.count(2) != 0 || sub.count(3) != 0)
                rep.fail("peripheral loop " + pl.name + " is not 1-dimensional");
            // cycle with integer coefficients, nonzero in H_1 of the component:
            // check it is a d1-cycle and not a boundary of the component's 2-chains
            CWComplexData tsub = cw.subcomplex(bc->cells);
            std::vector<mpz_class> z(tsub.count(1), 0);
            bool nonzero = false;
            for (const auto& [id, co] : pl.cycle) {
                int j = tsub.index_of(1, id);
                if (j < 0) { rep.fail("cycle of " + pl.name + " uses 1-cell outside loop/component: " + id); continue; }
                z[j] = co;
                if (co != 0) nonzero = true;
            }
            if (!nonzero) { rep.fail("peripheral cycle of " + pl.name + " is zero"); continue; }
            auto d1 = tsub.integer_boundary(1);
            for (size_t i = 0; i < tsub.count(0); ++i) {
                mpz_class s = 0;
                for (size_t j = 0; j < tsub.count(1); ++j) s += d1[i][j] * z[j];
                if (s != 0) rep.fail("peripheral cycle of " + pl.name + " is not a cycle");
            }
            // homologically nontrivial: rank of [d2 | z] exceeds rank d2
            auto d2 = tsub.integer_boundary(2);
            std::vector<std::vector<mpz_class>> aug(tsub.count(1));
            for (size_t i = 0; i < tsub.count(1); ++i) {
                aug[i] = d2[i];
                aug[i].push_back(z[i]);
            }
            if (tsub.count(2) > 0 && int_rank(aug) == int_rank(d2))
                rep.fail("peripheral cycle of " + pl.name + " bounds in its component");
        } catch (const std::exception& e) {
            rep.fail(std::string("peripheral loop ") + pl.name + ": " + e.what());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

std::map<std::string, long> fundamental_cycle_search(
    const CWComplexData& cw, const std::vector<std::string>& torus_cells,
    const std::map<std::string, long>* sign_reference) {
    CWComplexData sub = cw.subcomplex(torus_cells);
    if (sub.count(2) == 0) throw std::invalid_argument("no 2-cells in subcomplex");
    auto d2 = sub.integer_boundary(2);

    // kernel of d2 over Q with integer rescaling; H_2 of a closed oriented
    // surface is Z, so the kernel must be 1-dimensional
    const size_t rows = sub.count(1), cols = sub.count(2);
    std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m[i][j] = d2[i][j];
    // rref
    size_t r = 0;
    std::vector<size_t> piv;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = rows;
        for (size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        mpq_class inv = 1 / m[r][c];
        for (size_t j = 0; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    if (cols - r != 1)
        throw std::invalid_argument("H_2 of subcomplex is not rank 1 (not a single closed surface)");
    size_t free_col = 0;
    {
        std::set<size_t> pv(piv.begin(), piv.end());
        for (size_t c = 0; c < cols; ++c)
            if (!pv.count(c)) { free_col = c; break; }
    }
    std::vector<mpq_class> gen(cols, 0);
    gen[free_col] = 1;
    for (size_t i = 0; i < piv.size(); ++i) gen[piv[i]] = -m[i][free_col];
    // clear denominators, divide content
    mpz_class l = 1;
    for (const auto& q : gen) l = lcm(l, q.get_den());
    std::vector<mpz_class> zgen(cols);
    mpz_class content = 0;
    for (size_t j = 0; j < cols; ++j) {
        mpq_class s = gen[j] * mpq_class(l);
        zgen[j] = s.get_num();
        content = gcd(content, zgen[j]);
    }
    if (content > 1)
        for (auto& x : zgen) x /= content;

    // sign-match against the reference chain when provided
    if (sign_reference) {
        int dir = 0;
        for (size_t j = 0; j < cols; ++j) {
            auto it = sign_reference->find(sub.cells[2][j].id);
            long want = it == sign_reference->end() ? 0 : it->second;
            if (want != 0 && zgen[j] != 0) {
                dir = (want > 0) == (zgen[j] > 0) ? 1 : -1;
                break;
            }
        }
        if (dir == -1)
            for (auto& x : zgen) x = -x;
    }
    std::map<std::string, long> out;
    for (size_t j = 0; j < cols; ++j)
        if (zgen[j] != 0) out[sub.cells[2][j].id] = static_cast<long>(zgen[j].get_si());
    return out;
}

// ---------------------------------------------------------------------------

ExpansionResult elementary_expansion(const LinkExteriorComplex& c, const ExpansionSpec& spec) {
    ExpansionResult out;
    out.complex = c;
    LinkExteriorComplex& nc = out.complex;
    const std::string low = spec.new_low_id.empty() ? spec.attach + "_xlow" : spec.new_low_id;
    const std::string top = spec.new_top_id.empty() ? spec.attach + "_xtop" : spec.new_top_id;
    out.new_low_id = low;
    out.new_top_id = top;

    if (nc.cw.find(low) || nc.cw.find(top))
        throw std::invalid_argument("expansion cell id already in use");

    if (spec.dim == 3) {
        // pillow over an interior 2-cell: new 2-cell with the same attaching
        // data, new 3-cell bounded by the pair
        const Cell* base = nc.cw.find(spec.attach);
        if (!base || base->dim != 2)
            throw std::invalid_argument("dim-3 expansion needs an existing 2-cell");
        for (const auto& bc : c.boundary_components)
            for (const auto& id : bc.cells)
                if (id == spec.attach)
                    throw std::invalid_argument("dim-3 expansion requires an interior 2-cell");
        Cell f = *base;
        f.id = low;
        Cell b;
        b.id = top;
        b.dim = 3;
        b.boundary.push_back({low, 1, {}});
        b.boundary.push_back({spec.attach, -1, {}});
        nc.cw.cells[2].push_back(f);
        nc.cw.cells[3].push_back(b);
        out.incidence = 1;
    } else if (spec.dim == 2) {
        // bigon along an existing 1-cell: parallel 1-cell plus the 2-cell
        // between them
        const Cell* base = nc.cw.find(spec.attach);
        if (!base || base->dim != 1)
            throw std::invalid_argument("dim-2 expansion needs an existing 1-cell");
        Cell e = *base;
        e.id = low;
        // boundary of the parallel edge: same endpoints, path letter renamed
        for (auto& t : e.boundary)
            for (auto& [letter, s] : t.path.letters)
                if (letter == spec.attach) letter = low;
        Cell f;
        f.id = top;
        f.dim = 2;
        f.boundary.push_back({low, 1, {}});
        Word back;
        back.letters.push_back({low, 1});
        back.letters.push_back({spec.attach, -1});
        f.boundary.push_back({spec.attach, -1, back});
        nc.cw.cells[1].push_back(e);
        nc.cw.cells[2].push_back(f);
        out.incidence = 1;
        Word w;
        w.letters.push_back({spec.attach, 1});
        out.new_one_cells[low] = w;   // transported monodromy = mon(attach)
    } else if (spec.dim == 1) {
        // whisker: new vertex and an edge from the attach vertex to it
        const Cell* base = nc.cw.find(spec.attach);
        if (!base || base->dim != 0)
            throw std::invalid_argument("dim-1 expansion needs an existing 0-cell");
        Cell v;
        v.id = low;
        v.dim = 0;
        Cell e;
        e.id = top;
        e.dim = 1;
        Word fwd;
        fwd.letters.push_back({top, 1});
        e.boundary.push_back({low, 1, fwd});
        e.boundary.push_back({spec.attach, -1, {}});
        nc.cw.cells[0].push_back(v);
        nc.cw.cells[1].push_back(e);
        out.incidence = 1;
        out.new_one_cells[top] = {};   // identity monodromy
    } else {
        throw std::invalid_argument("expansion dimension must be 1, 2 or 3");
    }
    nc.cw.rebuild_index();
    return out;
}

} // namespace torsor
