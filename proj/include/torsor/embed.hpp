#pragma once

#include "torsor/numfield.hpp"

#include <complex>
#include <vector>

namespace torsor {

// numerical image of a field element under one complex embedding
struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;
    int precision_bits = 53;
};

// Roots of the min poly, Aberth iteration plus Newton polish, sorted by
// (re, im) after rounding to 12 digits so the ordering is reproducible.
std::vector<std::complex<double>> field_roots(const NumberField& field);

// evaluate at root root_index; 0 <= root_index < degree
ComplexApprox nf_embed(const FieldElement& a, int root_index);

// all embeddings at once
std::vector<ComplexApprox> all_embeddings(const FieldElement& a);

} // namespace torsor
