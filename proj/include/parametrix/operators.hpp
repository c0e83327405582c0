#pragma once

#include "parametrix/parampoly.hpp"
#include "parametrix/poly.hpp"
#include "parametrix/spectrum.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parametrix::ops {

using exact::ParamPoly;
using exact::PPoly;
using exact::QuadExt;
using exact::Rational;

// Degenerate second-order operator on the stretched cone,
//   r^{-2} [ sum_j a_j(r) (-r d/dr)^j + b(r) Lambda_X ],
// with polynomial coefficient series in r. Series entries may carry named
// parameter monomials (kappa_sq, Z); `parameters` holds their default exact
// values. Order-0 coefficients must be plain rationals: the type-A test and
// all pole locations depend on them.
struct ConeOperator {
    std::string name;
    int n = 3;
    std::vector<ParamPoly> a2{ParamPoly(1L)};
    std::vector<ParamPoly> a1;
    std::vector<ParamPoly> a0;
    std::vector<ParamPoly> b;
    std::shared_ptr<const spectrum::BaseSpectrum> base;
    int truncation_order = 64;
    std::map<std::string, Rational> parameters;
    std::optional<Rational> gamma_override;

    ParamPoly coeff(const std::vector<ParamPoly>& series, int i) const {
        return i >= 0 && i < static_cast<int>(series.size()) ? series[i] : ParamPoly();
    }

    // Highest power of r carrying a nonzero coefficient.
    int coefficient_order() const {
        int top = 0;
        for (const auto* s : {&a2, &a1, &a0, &b})
            for (int i = static_cast<int>(s->size()) - 1; i > top; --i)
                if (!(*s)[i].is_zero()) {
                    top = i;
                    break;
                }
        return top;
    }

    Rational a2_0() const { return order0(a2, "a2"); }
    Rational a1_0() const { return order0(a1, "a1"); }
    Rational a0_0() const { return order0(a0, "a0"); }
    Rational b_0() const { return order0(b, "b"); }

    // h_i(w, lambda_l) = a2^{(i)} w^2 + a1^{(i)} w + a0^{(i)} + b^{(i)} lambda_l.
    PPoly h_poly(int i, const Rational& lambda) const {
        std::vector<ParamPoly> c{coeff(a0, i) + coeff(b, i) * QuadExt(lambda), coeff(a1, i), coeff(a2, i)};
        return PPoly(std::move(c));
    }

    void validate() const {
        if (!base) throw std::invalid_argument(name + ": no base spectrum");
        if (n < 3) throw std::invalid_argument(name + ": dimension must be >= 3");
        if (base->base_dimension() != n - 1)
            throw std::invalid_argument(name + ": base dimension does not match the ambient dimension");
        if (a2_0() != 1) throw std::invalid_argument(name + ": normalization a2^(0) = 1 is required");
        Rational disc = a1_0() * a1_0() - 4 * a0_0();
        if (disc <= 0)
            throw std::invalid_argument(name + ": (a1^(0))^2 - 4 a0^(0) must be positive (type-A)");
        if (b_0() >= 0) throw std::invalid_argument(name + ": b^(0) must be negative (type-A)");
        if (base->eigenvalue(0) != 0)
            throw std::invalid_argument(name + ": base spectrum must start at eigenvalue 0");
    }

    // Delta w(lambda_l) = sqrt((a1/2)^2 - a0 - b lambda_l), exact.
    QuadExt delta_w(int ell) const {
        Rational half_a1 = a1_0() / 2;
        Rational radicand = half_a1 * half_a1 - a0_0() - b_0() * base->eigenvalue(ell);
        if (radicand <= 0)
            throw std::domain_error(name + ": degenerate conormal roots at ell = " + std::to_string(ell) +
                                    " (not type-A)");
        return exact::quad_sqrt(radicand);
    }

    // Conormal roots of h_0^{(-1)}: 2 - a1/2 +/- Delta w.
    std::pair<QuadExt, QuadExt> conormal_pole_pair(int ell) const {
        QuadExt center(Rational(2) - a1_0() / 2);
        QuadExt dw = delta_w(ell);
        return {center + dw, center - dw};
    }

    // Midpoint of the admissible gamma strip for ell = 0; the strip is
    // n/2 + a1/2 - dw(0) < gamma < n/2 + a1/2 + dw(0).
    Rational default_gamma() const {
        if (gamma_override) return *gamma_override;
        return exact::make_rational(n, 2) + a1_0() / 2;
    }

    // The l = 0 "+" conormal pole sits exactly at w = n under this coefficient
    // relation, which is what makes the r~ -> 0 fundamental-solution limit finite.
    bool fundamental_solution_compatible() const {
        return a0_0() == -a1_0() * Rational(n - 2) - Rational(n - 2) * Rational(n - 2);
    }

private:
    Rational order0(const std::vector<ParamPoly>& series, const char* which) const {
        ParamPoly c = series.empty() ? ParamPoly() : series.front();
        if (!c.is_constant())
            throw std::invalid_argument(name + ": order-0 coefficient " + which + " must be parameter-free");
        QuadExt v = c.constant_value();
        if (!v.is_rational())
            throw std::invalid_argument(name + ": order-0 coefficient " + which + " must be rational");
        return v.as_rational();
    }
};

// Vertical integration contour Re w = (n+4)/2 - gamma used by the parametrix
// integrals, stored through the weight gamma.
struct ContourSpec {
    Rational gamma;

    Rational real_part(int n) const { return exact::make_rational(n + 4, 2) - gamma; }

    // Checks gamma against the admissible ell = 0 strip of the operator.
    void validate(const ConeOperator& op) const {
        QuadExt lo = QuadExt(exact::make_rational(op.n, 2) + op.a1_0() / 2) - op.delta_w(0);
        QuadExt hi = QuadExt(exact::make_rational(op.n, 2) + op.a1_0() / 2) + op.delta_w(0);
        QuadExt g{gamma};
        if (!(compare(lo, g) < 0 && compare(g, hi) < 0))
            throw std::invalid_argument("contour: gamma outside the admissible ell = 0 strip");
    }
};

inline ContourSpec default_contour(const ConeOperator& op) { return ContourSpec{op.default_gamma()}; }

// ---------------------------------------------------------------------------
// Built-in operator families.
// ---------------------------------------------------------------------------

// Shifted Laplacian Delta_n - kappa^2 on R^n in polar form:
// a2 = 1, a1 = -(n-2), a0 = -kappa^2 r^2, b = -1 against Lambda = -Delta_{S^{n-1}}.
inline ConeOperator shifted_laplacian(int n, const Rational& kappa_sq) {
    ConeOperator op;
    op.name = "shifted-laplacian";
    op.n = n;
    op.a2 = {ParamPoly(1L)};
    op.a1 = {ParamPoly(QuadExt(Rational(-(n - 2))))};
    op.a0 = {ParamPoly(), ParamPoly(), ParamPoly(exact::Monomial{{"kappa_sq", 1}}, QuadExt(-1L))};
    op.b = {ParamPoly(-1L)};
    op.base = spectrum::sphere_spectrum(n);
    op.parameters["kappa_sq"] = kappa_sq;
    op.validate();
    return op;
}

// Laplacian as the kappa -> 0 member of the shifted family.
inline ConeOperator laplacian(int n) {
    ConeOperator op = shifted_laplacian(n, Rational(0));
    op.name = "laplacian";
    return op;
}

// Electron-nucleus scattering operator -2(H + kappa^2) in R^3:
// a1 = -1, a0 = 2 Z r - 2 kappa^2 r^2, b = -1.
inline ConeOperator coulomb(const Rational& Z, const Rational& kappa_sq) {
    ConeOperator op;
    op.name = "coulomb";
    op.n = 3;
    op.a2 = {ParamPoly(1L)};
    op.a1 = {ParamPoly(-1L)};
    op.a0 = {ParamPoly(), ParamPoly(exact::Monomial{{"Z", 1}}, QuadExt(2L)),
             ParamPoly(exact::Monomial{{"kappa_sq", 1}}, QuadExt(-2L))};
    op.b = {ParamPoly(-1L)};
    op.base = spectrum::sphere_spectrum(3);
    op.parameters["Z"] = Z;
    op.parameters["kappa_sq"] = kappa_sq;
    op.validate();
    return op;
}

} // namespace parametrix::ops
