#pragma once

#include "torsor/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace torsor {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// K = Q[w]/(f(w)) for a monic irreducible f. Elements live in the power basis
// 1, w, ..., w^{d-1}. The rational field itself is the degree-1 case f = w.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // min_poly: coefficients of f, lowest degree first, monic, degree >= 1.
    // Irreducibility is checked by a rational-root test; callers constructing
    // fields of degree > 3 that are not covered by that test must pass
    // trusted = true.
    static FieldPtr create(std::vector<Rational> min_poly, bool trusted = false);

    static FieldPtr rationals();   // Q as Q[w]/(w)

    int degree() const { return degree_; }
    const std::vector<Rational>& min_poly() const { return min_poly_; }

    bool same_field(const NumberField& other) const;

    // reduction of w^k for k in [degree, 2*degree-2], as power-basis vectors
    const std::vector<std::vector<Rational>>& power_reductions() const { return red_; }

private:
    explicit NumberField(std::vector<Rational> min_poly);

    std::vector<Rational> min_poly_;
    int degree_;
    std::vector<std::vector<Rational>> red_;
};

class FieldElement {
public:
    FieldElement() = default;   // invalid placeholder; any use throws
    FieldElement(FieldPtr field, std::vector<Rational> coeffs);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    static FieldElement generator(const FieldPtr& field);      // w
    static FieldElement from_rational(const FieldPtr& field, const Rational& r);
    static FieldElement from_int(const FieldPtr& field, long n);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;   // all higher coefficients vanish
    Rational rational_part() const { return coeffs_.at(0); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;                 // extended Euclid mod f
    FieldElement scaled(const Rational& r) const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // "85/16*w^5 - 33/8*w^4 + ... - 11"; parse accepts the same syntax.
    std::string str() const;

private:
    void check_same_field(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

FieldElement parse_field_element(const FieldPtr& field, const std::string& text);

// coefficient-list form used by the JSON data files: ["p/q", ...], low degree
// first, shorter lists are zero-padded
FieldElement element_from_coeff_strings(const FieldPtr& field,
                                        const std::vector<std::string>& coeffs);
std::vector<std::string> element_to_coeff_strings(const FieldElement& e);

} // namespace torsor
