#pragma once

#include "torsor/io.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace torsor::testing {

inline std::string data_path(const std::string& file) {
    const char* dir = std::getenv("TORSOR_DATA");
    return std::string(dir ? dir : "data") + "/" + file;
}

inline FieldPtr eisenstein_field() {
    // Q[w]/(w^2 - w + 1)
    return NumberField::create({Rational(1), Rational(-1), Rational(1)});
}

inline FieldPtr degree6_field() {
    return NumberField::create({Rational(8), Rational(-6), Rational(8), Rational(-5),
                                Rational(3), Rational(-1), Rational(1)},
                               /*trusted=*/true);
}

// deterministic random field elements with small numerators/denominators
class ElementGen {
public:
    ElementGen(FieldPtr field, unsigned seed) : field_(std::move(field)), rng_(seed) {}

    FieldElement next() {
        std::vector<Rational> c(field_->degree());
        for (auto& x : c) {
            long num = static_cast<long>(rng_() % 11) - 5;
            long den = 1 + static_cast<long>(rng_() % 4);
            x = Rational(num, den);
            x.canonicalize();
        }
        return FieldElement(field_, std::move(c));
    }

    FieldElement next_nonzero() {
        for (;;) {
            FieldElement e = next();
            if (!e.is_zero()) return e;
        }
    }

    Matrix next_matrix(size_t n) {
        Matrix m(field_, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m.at(i, j) = next();
        return m;
    }

    Matrix next_invertible(size_t n) {
        for (;;) {
            Matrix m = next_matrix(n);
            if (!determinant(m).is_zero()) return m;
        }
    }

private:
    FieldPtr field_;
    std::mt19937 rng_;
};

} // namespace torsor::testing
