#include "torsor/numfield.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace torsor {

namespace {

// divisors of |n|, for the rational-root test
std::vector<mpz_class> divisors(const mpz_class& n) {
    mpz_class a = abs(n);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            out.push_back(a / d);
        }
    }
    return out;
}

Rational eval_poly(const std::vector<Rational>& f, const Rational& x) {
    Rational acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

} // namespace

NumberField::NumberField(std::vector<Rational> min_poly)
    : min_poly_(std::move(min_poly)), degree_(static_cast<int>(min_poly_.size()) - 1) {
    // power reductions: w^d = -(f_0 + f_1 w + ...), then shift-and-reduce
    std::vector<Rational> cur(degree_);
    for (int i = 0; i < degree_; ++i) cur[i] = -min_poly_[i];
    red_.push_back(cur);
    for (int k = degree_ + 1; k <= 2 * degree_ - 2; ++k) {
        std::vector<Rational> nxt(degree_);
        for (int i = 1; i < degree_; ++i) nxt[i] = cur[i - 1];
        Rational top = cur[degree_ - 1];
        if (top != 0)
            for (int i = 0; i < degree_; ++i) nxt[i] -= top * min_poly_[i];
        cur = std::move(nxt);
        red_.push_back(cur);
    }
}

FieldPtr NumberField::create(std::vector<Rational> min_poly, bool trusted) {
    if (min_poly.size() < 2)
        throw std::invalid_argument("min poly must have degree >= 1");
    if (min_poly.back() != 1)
        throw std::invalid_argument("min poly must be monic");
    int deg = static_cast<int>(min_poly.size()) - 1;
    if (deg > 1) {
        // rational-root test on the primitive integer form
        mpz_class lcm_den = 1;
        for (const auto& c : min_poly) lcm_den = lcm(lcm_den, c.get_den());
        std::vector<mpz_class> zf;
        for (const auto& c : min_poly) {
            mpq_class scaled = c * Rational(lcm_den);
            zf.push_back(scaled.get_num());
        }
        if (zf.front() == 0)
            throw std::invalid_argument("min poly is reducible (root 0)");
        for (const auto& p : divisors(zf.front()))
            for (const auto& q : divisors(zf.back()))
                for (int s : {1, -1}) {
                    Rational cand(p * s, q);
                    cand.canonicalize();
                    if (eval_poly(min_poly, cand) == 0)
                        throw std::invalid_argument("min poly is reducible (rational root " +
                                                    format_rational(cand) + ")");
                }
        if (deg > 3 && !trusted)
            throw std::invalid_argument(
                "degree > 3 min poly requires trusted=true (only rational roots are excluded)");
    }
    return FieldPtr(new NumberField(std::move(min_poly)));
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = FieldPtr(new NumberField({Rational(0), Rational(1)}));
    return q;
}

bool NumberField::same_field(const NumberField& other) const {
    return this == &other || min_poly_ == other.min_poly_;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("null field");
    if (static_cast<int>(coeffs_.size()) != field_->degree())
        throw std::invalid_argument("coefficient count does not match field degree");
}

FieldElement FieldElement::zero(const FieldPtr& field) {
    return FieldElement(field, std::vector<Rational>(field->degree()));
}

FieldElement FieldElement::one(const FieldPtr& field) {
    std::vector<Rational> c(field->degree());
    c[0] = 1;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (field->degree() < 2)
        throw std::invalid_argument("rational field has no generator");
    std::vector<Rational> c(field->degree());
    c[1] = 1;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rational& r) {
    std::vector<Rational> c(field->degree());
    c[0] = r;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::from_int(const FieldPtr& field, long n) {
    return from_rational(field, Rational(n));
}

bool FieldElement::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

void FieldElement::check_same_field(const FieldElement& o) const {
    if (!field_ || !o.field_) throw std::invalid_argument("uninitialised field element");
    if (!field_->same_field(*o.field_))
        throw std::invalid_argument("field mismatch");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement r = *this;
    r += o;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same_field(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement r = *this;
    r -= o;
    return r;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same_field(o);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(o);
    const int d = field_->degree();
    std::vector<Rational> prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (o.coeffs_[j] == 0) continue;
            prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    std::vector<Rational> out(prod.begin(), prod.begin() + d);
    const auto& red = field_->power_reductions();
    for (int k = d; k <= 2 * d - 2; ++k) {
        if (prod[k] == 0) continue;
        const auto& r = red[k - d];
        for (int i = 0; i < d; ++i) out[i] += prod[k] * r[i];
    }
    return FieldElement(field_, std::move(out));
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    *this = *this * o;
    return *this;
}

FieldElement FieldElement::scaled(const Rational& r) const {
    FieldElement out = *this;
    for (auto& c : out.coeffs_) c *= r;
    return out;
}

namespace {

using Poly = std::vector<Rational>;   // dense, low degree first, may have zero tail

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_sub_mul(const Poly& a, const Poly& q, const Poly& b) {
    // a - q*b
    Poly out = a;
    if (!q.empty() && !b.empty()) {
        out.resize(std::max(out.size(), q.size() + b.size() - 1));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
        }
    }
    trim(out);
    return out;
}

// division with remainder: a = q*b + r
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        size_t sh = a.size() - b.size();
        if (q.size() < sh + 1) q.resize(sh + 1);
        q[sh] += c;
        for (size_t j = 0; j < b.size(); ++j) a[sh + j] -= c * b[j];
        trim(a);
    }
    return {q, a};
}

} // namespace

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in number field");
    const int d = field_->degree();
    // extended Euclid on (f, this); f irreducible, so gcd is a constant
    Poly r0 = field_->min_poly();
    Poly r1 = coeffs_;
    trim(r1);
    Poly s0;             // coefficient of `this` for r0
    Poly s1 = {Rational(1)};
    while (true) {
        auto [q, r] = poly_divmod(r0, r1);
        if (r.empty()) {
            if (r1.size() != 1)
                throw std::domain_error("min poly is not irreducible");
            Poly u = s1;
            Rational g = r1[0];
            std::vector<Rational> out(d);
            for (size_t i = 0; i < u.size() && i < static_cast<size_t>(d); ++i)
                out[i] = u[i] / g;
            return FieldElement(field_, std::move(out));
        }
        Poly s = poly_sub_mul(s0, q, s1);
        s0 = std::move(s1);
        s1 = std::move(s);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_same_field(o);
    return coeffs_ == o.coeffs_;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit_coeff = (a == 1) && k > 0;
        if (!unit_coeff) os << format_rational(a);
        if (k > 0) {
            if (!unit_coeff) os << "*";
            os << "w";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) return "0";
    return os.str();
}

namespace {

struct Term {
    Rational coeff;
    int power = 0;
};

// one term: [p/q][*][w[^k]]  or just "w^k"
Term parse_term(const std::string& t) {
    size_t wpos = t.find('w');
    Term out;
    if (wpos == std::string::npos) {
        out.coeff = parse_rational(t);
        out.power = 0;
        return out;
    }
    std::string coef = t.substr(0, wpos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    if (coef.empty() || coef == "+")
        out.coeff = 1;
    else if (coef == "-")
        out.coeff = -1;
    else
        out.coeff = parse_rational(coef);
    std::string rest = t.substr(wpos + 1);
    if (rest.empty())
        out.power = 1;
    else if (rest[0] == '^')
        out.power = std::stoi(rest.substr(1));
    else
        throw std::invalid_argument("bad power syntax in term: " + t);
    return out;
}

} // namespace

FieldElement parse_field_element(const FieldPtr& field, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty field element");
    std::vector<Rational> coeffs(field->degree());
    size_t i = 0;
    while (i < s.size()) {
        int sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn = s[i] == '-' ? -1 : 1;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        if (j == i) throw std::invalid_argument("malformed element: " + text);
        Term t = parse_term(s.substr(i, j - i));
        if (t.power >= field->degree())
            throw std::invalid_argument("power exceeds field degree: " + text);
        coeffs[t.power] += Rational(sgn) * t.coeff;
        i = j;
    }
    return FieldElement(field, std::move(coeffs));
}

FieldElement element_from_coeff_strings(const FieldPtr& field,
                                        const std::vector<std::string>& coeffs) {
    if (static_cast<int>(coeffs.size()) > field->degree())
        throw std::invalid_argument("too many coefficients for field");
    std::vector<Rational> c(field->degree());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = parse_rational(coeffs[i]);
    return FieldElement(field, std::move(c));
}

std::vector<std::string> element_to_coeff_strings(const FieldElement& e) {
    std::vector<std::string> out;
    for (const auto& c : e.coeffs()) out.push_back(format_rational(c));
    while (out.size() > 1 && out.back() == "0") out.pop_back();
    return out;
}

} // namespace torsor
