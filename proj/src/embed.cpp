#include "torsor/embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace torsor {

namespace {

using cd = std::complex<double>;

cd eval(const std::vector<cd>& f, cd x) {
    cd acc = 0.0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

cd eval_deriv(const std::vector<cd>& f, cd x) {
    cd acc = 0.0;
    for (int k = static_cast<int>(f.size()) - 1; k >= 1; --k)
        acc = acc * x + static_cast<double>(k) * f[k];
    return acc;
}

double round12(double x) {
    if (x == 0.0) return 0.0;
    double mag = std::pow(10.0, 12 - 1 - std::floor(std::log10(std::abs(x))));
    double r = std::round(x * mag) / mag;
    return r == 0.0 ? 0.0 : r;   // normalise -0
}

} // namespace

std::vector<cd> field_roots(const NumberField& field) {
    const int d = field.degree();
    std::vector<cd> f(d + 1);
    for (int i = 0; i <= d; ++i) f[i] = mpq_get_d(field.min_poly()[i].get_mpq_t());

    // initial guesses on a circle of radius from the coefficient bound
    double radius = 0.0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(f[i]));
    radius = 1.0 + radius;
    std::vector<cd> z(d);
    for (int i = 0; i < d; ++i) {
        double ang = 2.0 * M_PI * (i + 0.25) / d + 0.3;
        z[i] = radius * cd(std::cos(ang), std::sin(ang));
    }

    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < d; ++i) {
            cd p = eval(f, z[i]);
            cd dp = eval_deriv(f, z[i]);
            if (dp == cd(0.0)) { z[i] += cd(1e-6, 1e-6); continue; }
            cd newton = p / dp;
            cd sum = 0.0;
            for (int j = 0; j < d; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            cd delta = newton / (1.0 - newton * sum);
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-15 * radius) break;
    }
    // Newton polish
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < 6; ++k) {
            cd dp = eval_deriv(f, z[i]);
            if (dp == cd(0.0)) break;
            z[i] -= eval(f, z[i]) / dp;
        }
    for (int i = 0; i < d; ++i)
        if (!(std::isfinite(z[i].real()) && std::isfinite(z[i].imag())))
            throw std::runtime_error("root finding failed to converge");

    std::sort(z.begin(), z.end(), [](const cd& a, const cd& b) {
        double ar = round12(a.real()), br = round12(b.real());
        if (ar != br) return ar < br;
        return round12(a.imag()) < round12(b.imag());
    });
    return z;
}

ComplexApprox nf_embed(const FieldElement& a, int root_index) {
    const auto& field = *a.field();
    if (root_index < 0 || root_index >= field.degree())
        throw std::out_of_range("root index out of range");
    auto roots = field_roots(field);
    cd w = roots[root_index];
    cd acc = 0.0;
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
        acc = acc * w + mpq_get_d(it->get_mpq_t());
    ComplexApprox out;
    out.re = acc.real();
    out.im = acc.imag();
    if (!(std::isfinite(out.re) && std::isfinite(out.im)))
        throw std::runtime_error("embedding overflow");
    return out;
}

std::vector<ComplexApprox> all_embeddings(const FieldElement& a) {
    std::vector<ComplexApprox> out;
    for (int i = 0; i < a.field()->degree(); ++i) out.push_back(nf_embed(a, i));
    return out;
}

} // namespace torsor
