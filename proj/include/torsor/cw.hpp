#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torsor {

// word in oriented 1-cells; traversal order is first-to-last, exponents +-1
struct Word {
    std::vector<std::pair<std::string, int>> letters;
};

struct BoundaryTerm {
    std::string target;   // (dim-1)-cell id
    int sign = 1;         // local mapping degree, +-1
    Word path;            // transport path between cell anchors
};

struct Cell {
    std::string id;
    int dim = 0;
    std::vector<BoundaryTerm> boundary;
};

// generic finite CW data, dimensions 0..3, with path-decorated boundaries
struct CWComplexData {
    std::array<std::vector<Cell>, 4> cells;

    size_t count(int dim) const { return cells[dim].size(); }
    const Cell* find(const std::string& id) const;
    int index_of(int dim, const std::string& id) const;   // -1 if absent
    void rebuild_index();

    // integer boundary matrix d_dim : C_dim -> C_{dim-1} (untwisted)
    std::vector<std::vector<mpz_class>> integer_boundary(int dim) const;

    // restriction to a cell subset (must be boundary-closed)
    CWComplexData subcomplex(const std::vector<std::string>& ids) const;

private:
    std::map<std::string, std::pair<int, int>> index_;   // id -> (dim, pos)
};

struct BoundaryComponent {
    std::string name;
    std::vector<std::string> cells;
};

struct PeripheralLoop {
    std::string name;
    std::string component;                 // boundary component it lies on
    std::vector<std::string> cells;        // loop subcomplex
    std::map<std::string, long> cycle;     // fundamental 1-cycle
};

struct LinkExteriorComplex {
    CWComplexData cw;
    std::vector<BoundaryComponent> boundary_components;
    std::vector<PeripheralLoop> peripheral_loops;
    std::map<std::string, long> fundamental_class_3;
    std::map<std::string, long> fundamental_class_2;
    std::string name;
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> errors;
    void fail(std::string msg) {
        valid = false;
        errors.push_back(std::move(msg));
    }
};

// dd = 0 over Z, subcomplex closure, chi of boundary components, fundamental
// cycle conditions, peripheral cycles
ValidationReport validate_complex(const LinkExteriorComplex& c);

// Smith normal form invariant factors of an integer matrix
std::vector<mpz_class> smith_invariants(std::vector<std::vector<mpz_class>> m);

struct HomologySummary {
    std::vector<long> free_rank;                     // per degree
    std::vector<std::vector<mpz_class>> torsion;     // invariant factors > 1
};

// untwisted homology over Z (ranks + torsion) of the cw data
HomologySummary untwisted_homology(const CWComplexData& cw);

long euler_characteristic(const CWComplexData& cw);

// generator of H_2(T; Z) for a closed-surface subcomplex, sign-matched to the
// reference chain when one is given
std::map<std::string, long> fundamental_cycle_search(
    const CWComplexData& cw, const std::vector<std::string>& torus_cells,
    const std::map<std::string, long>* sign_reference);

// ---------------------------------------------------------------------------
// elementary expansions

struct ExpansionSpec {
    int dim = 3;                 // dimension i of the new top cell
    std::string attach;          // dim 3: interior 2-cell id; dim 2: 1-cell id; dim 1: 0-cell id
    std::string new_low_id;      // id for the new (i-1)-cell
    std::string new_top_id;      // id for the new i-cell
};

struct ExpansionResult {
    LinkExteriorComplex complex;
    std::string new_low_id;
    std::string new_top_id;
    int incidence = 1;           // [sigma^i : sigma^{i-1}]
    // 1-cells the local system must be extended to, with the word giving the
    // transported monodromy (empty word = identity)
    std::map<std::string, Word> new_one_cells;
};

ExpansionResult elementary_expansion(const LinkExteriorComplex& c, const ExpansionSpec& spec);

} // namespace torsor
