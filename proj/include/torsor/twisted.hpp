#pragma once

#include "torsor/cw.hpp"
#include "torsor/embed.hpp"
#include "torsor/localsystem.hpp"

#include <array>

namespace torsor {

// block boundary matrices of C_*(M; rep o ls); block (sigma, tau) is the sum
// of sign * rep(mon(path)) over the boundary terms of tau
struct TwistedChainComplex {
    const CWComplexData* cw = nullptr;
    FieldPtr field;
    int rank = 0;                    // local-system rank r
    std::array<Matrix, 4> boundary;  // boundary[d] = d_d for d = 1..3; [0] unused

    size_t dim(int degree) const { return cw->count(degree) * rank; }
    size_t block_index(int degree, const std::string& cell_id) const;
};

// assembles and verifies dd = 0 exactly (throws std::runtime_error otherwise)
TwistedChainComplex assemble_twisted(const CWComplexData& cw, const MarkedLocalSystem& ls,
                                     const Representation& rep);

std::array<long, 4> twisted_betti(const TwistedChainComplex& t);

// flat sections of the restriction to a connected subcomplex
struct FlatSectionBasis {
    std::string base;                      // base 0-cell
    VectorFamily at_base;                  // section values at the base marking
    // full vertex values, one map per section
    std::vector<std::map<std::string, std::vector<FieldElement>>> at_vertices;
};

FlatSectionBasis invariant_sections(const CWComplexData& cw, const MarkedLocalSystem& ls,
                                    const Representation& rep,
                                    const std::vector<std::string>& component_cells,
                                    const std::string& base_vertex);

struct RegularityReport {
    std::array<long, 4> betti{};        // dim H_0..H_3 (M)
    long boundary_h0_dim = 0;           // dim H^0(dM), all components
    bool h2_map_iso = false;            // H^0(dM) -> H_2(M) bijective
    bool h1_map_iso = false;            // H^0(dM) -> H_1(M) bijective
    bool boundary_regular = false;      // conditions (1)-(3)
    bool gamma_regular = false;         // conditions (1)-(4)
};

struct TorsionResult {
    FieldElement value;
    int sign_alpha = 1;
    int sign_orientation = 1;
    RegularityReport regular;
    std::vector<ComplexApprox> embeddings;
};

// homology orientation: ordered Q-bases of H_*(M; Q) plus a global sign
struct HomologyOrientation {
    std::array<VectorFamily, 4> basis;   // over NumberField::rationals()
    int sign = 1;
};

// deterministic default: echelon-form generators of rational homology, + sign
HomologyOrientation default_homology_orientation(const CWComplexData& cw);

// cap products of flat sections with the fundamental cycles: chains in C_1
// and C_2 whose classes are the Porti h-bases. Sections are transported to
// cell anchors along the cells' boundary-term paths (all listed incidences
// must agree; non-flat input throws).
struct PortiBases {
    VectorFamily h1;   // chains in C_1 coordinates
    VectorFamily h2;   // chains in C_2 coordinates
};

PortiBases porti_bases(const TwistedChainComplex& t, const LinkExteriorComplex& cx,
                       const MarkedLocalSystem& ls, const Representation& rep,
                       const std::vector<FlatSectionBasis>& sections,
                       const std::string& loop_name);

RegularityReport check_regularity(const TwistedChainComplex& t, const PortiBases& pb,
                                  long boundary_h0_dim);

// (-1)^alpha with alpha = 1/2 sum_i rank B_i (rank B_i - (-1)^i)
//                        + sum_{i even < j odd} rank C_i rank C_j
int sign_alpha(const std::array<long, 4>& rank_B, const std::array<long, 4>& rank_C);

// +1 for even rank; otherwise the sign of the rational torsion of the
// trivial rank-1 system with h-bases given by the orientation
int orientation_sign(const CWComplexData& cw, int rank, const HomologyOrientation& o);

// the explicit torsion formula with the given h-families (h[0] and h[3]
// usually empty); returns the value and the alpha sign actually used
struct TorsionFormulaOutput {
    FieldElement value;
    int sign_alpha = 1;
    bool families_complete = false;   // every degree produced a square matrix
    int failed_degree = -1;           // first degree with a singular family
};

TorsionFormulaOutput torsion_formula(const TwistedChainComplex& t,
                                     const std::array<const VectorFamily*, 4>& h);

// full pipeline: assemble -> sections -> caps -> regularity -> value.
// Does not throw on non-regular input: the report records the failure and
// the value is 0.
TorsionResult torsion(const LinkExteriorComplex& cx, const MarkedLocalSystem& ls,
                      const Representation& rep, const std::string& loop_name,
                      const HomologyOrientation& o, bool fill_embeddings = true);

// chooses the representation from the group tag: GSp(4) -> adjoint,
// PGL(2) -> sl2_irrep(3)
TorsionResult adjoint_torsion(const LinkExteriorComplex& cx, const MarkedLocalSystem& ls,
                              const std::string& loop_name, const HomologyOrientation& o);

struct DecompositionCheck {
    FieldElement lhs;                  // adjoint torsion of the embedded system
    FieldElement rhs;                  // product of the odd irreducible factors
    std::vector<FieldElement> factors;
    std::vector<int> exponents;
    bool equal = false;
};

// principal-embedding decomposition cross-check for a PGL_2 system
DecompositionCheck decomposition_check(const LinkExteriorComplex& cx,
                                       const MarkedLocalSystem& pgl2_system,
                                       const std::string& lie_type,
                                       const std::string& loop_name);

// dimension of the joint commutant of rep(mon(g)) over the generating 1-cells
long commutant_dimension(const MarkedLocalSystem& ls, const Representation& rep,
                         const std::vector<std::string>& generators);

} // namespace torsor
