#pragma once

#include "parametrix/bigfloat.hpp"
#include "parametrix/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace parametrix::special {

using exact::Integer;
using exact::Rational;

// Shared cache of exact combinatorial values plus the working precision used
// by the series evaluations in this module.
struct SpecialFunctionTable {
    int working_digits = 50;
    int max_series_terms = 4000;
    std::map<long, Rational> harmonic_cache;

    const Rational& harmonic(long p) {
        auto it = harmonic_cache.find(p);
        if (it != harmonic_cache.end()) return it->second;
        Rational h = p <= 0 ? Rational(0) : harmonic(p - 1) + exact::make_rational(1, p);
        return harmonic_cache.emplace(p, std::move(h)).first->second;
    }
};

inline SpecialFunctionTable& default_table() {
    static SpecialFunctionTable table;
    return table;
}

// Gamma(q + 1/2) / sqrt(pi) as an exact rational, for any integer q.
inline Rational gamma_half_over_sqrt_pi(long q) {
    if (q >= 0) return Rational(exact::double_factorial(2 * q - 1)) / exact::pow_rational(Rational(2), q);
    long m = -q;
    return exact::pow_rational(Rational(-4), m) * Rational(exact::factorial(m)) / Rational(exact::factorial(2 * m));
}

namespace detail {

// Power series sum_k t_k with t_k = (x^2/4)^k * c(k); stops once the terms
// are far below the working precision relative to the largest magnitude seen.
template <class CoeffFn>
BigFloat sum_even_series(const BigFloat& x, CoeffFn coeff, int max_terms) {
    BigFloat q = x * x / BigFloat(4L);
    BigFloat qk(1L);
    BigFloat sum(0L);
    BigFloat peak(0L);
    BigFloat cutoff = pow_si(BigFloat(10L), -(BigFloat::default_prec() / 3) - 8);
    for (int k = 0; k < max_terms; ++k) {
        BigFloat term = qk * coeff(k);
        sum += term;
        BigFloat mag = abs(term);
        if (mag > peak) peak = mag;
        if (k > 4 && mag < cutoff * (peak + BigFloat(1L)) && q < BigFloat(static_cast<long>(k) * k))
            return sum;
        qk *= q;
    }
    throw std::runtime_error("special: series did not reach the working precision");
}

} // namespace detail

// Modified Bessel function of the first kind, I_nu(x), for integer nu >= 0 or
// half-integer nu (either sign), by the defining power series with exact
// rational coefficients rendered at working precision.
inline BigFloat bessel_I(const Rational& nu, const BigFloat& x, SpecialFunctionTable& table = default_table()) {
    if (!(x > BigFloat(0L))) throw std::domain_error("bessel_I: x must be positive");
    Rational two_nu = nu * 2;
    if (!exact::is_integer(two_nu)) throw std::domain_error("bessel_I: order must be integer or half-integer");
    if (exact::is_integer(nu)) {
        long m = exact::to_long(nu);
        if (m < 0) throw std::domain_error("bessel_I: negative integer orders are excluded");
        BigFloat series = detail::sum_even_series(
            x,
            [&](int k) {
                Rational c = Rational(1) / (Rational(exact::factorial(k)) * Rational(exact::factorial(m + k)));
                return BigFloat(c);
            },
            table.max_series_terms);
        return pow_si(x / BigFloat(2L), m) * series;
    }
    // nu = s + 1/2: I_nu(x) = (x/2)^s sqrt(x/2) / sqrt(pi) * sum_k (x^2/4)^k / (k! g(s+k+1))
    long s = exact::to_long((two_nu - 1) / 2);
    BigFloat series = detail::sum_even_series(
        x,
        [&](int k) {
            Rational g = gamma_half_over_sqrt_pi(s + k + 1);
            Rational c = Rational(1) / (Rational(exact::factorial(k)) * g);
            return BigFloat(c);
        },
        table.max_series_terms);
    BigFloat half_x = x / BigFloat(2L);
    return pow_si(half_x, s) * sqrt(half_x) / sqrt(BigFloat::pi()) * series;
}

// K_{l+1/2}(x) = (pi/2) (-1)^l ( I_{-l-1/2}(x) - I_{l+1/2}(x) ).
inline BigFloat bessel_K_half(int ell, const BigFloat& x, SpecialFunctionTable& table = default_table()) {
    if (ell < 0) throw std::domain_error("bessel_K_half: negative order");
    if (!(x > BigFloat(0L))) throw std::domain_error("bessel_K_half: x must be positive");
    Rational nu_p = exact::make_rational(2 * ell + 1, 2);
    BigFloat diff = bessel_I(-nu_p, x, table) - bessel_I(nu_p, x, table);
    BigFloat k = BigFloat::pi() / BigFloat(2L) * diff;
    return ell % 2 == 0 ? k : -k;
}

// Modified Bessel function of the second kind for integer order m >= 0, via
// the logarithmic series: finite singular part, -(-1)^m ln(x/2) I_m(x) is
// absorbed with sign (-1)^{m+1}, and the psi-series with psi(k+1) = H_k - g.
inline BigFloat bessel_K_int(long m, const BigFloat& x, SpecialFunctionTable& table = default_table()) {
    if (m < 0) throw std::domain_error("bessel_K_int: negative order");
    if (!(x > BigFloat(0L))) throw std::domain_error("bessel_K_int: x must be positive");
    BigFloat half_x = x / BigFloat(2L);
    BigFloat sum(0L);
    if (m > 0) {
        BigFloat qk(1L);
        BigFloat minus_q = -(x * x) / BigFloat(4L);
        BigFloat finite(0L);
        for (long k = 0; k < m; ++k) {
            Rational c = Rational(exact::factorial(m - k - 1)) / Rational(exact::factorial(k));
            finite += BigFloat(c) * qk;
            qk *= minus_q;
        }
        sum += BigFloat(exact::make_rational(1, 2)) * pow_si(half_x, -m) * finite;
    }
    BigFloat im = bessel_I(Rational(m), x, table);
    BigFloat sign = m % 2 == 0 ? BigFloat(1L) : BigFloat(-1L);
    sum += -sign * log(half_x) * im; // (-1)^{m+1} ln(x/2) I_m(x)
    BigFloat gamma = BigFloat::euler_gamma();
    BigFloat psi_series = detail::sum_even_series(
        x,
        [&](int k) {
            Rational c = Rational(1) / (Rational(exact::factorial(k)) * Rational(exact::factorial(m + k)));
            BigFloat psi_sum = BigFloat(table.harmonic(k)) + BigFloat(table.harmonic(m + k)) - BigFloat(2L) * gamma;
            return BigFloat(c) * psi_sum;
        },
        table.max_series_terms);
    sum += sign * BigFloat(exact::make_rational(1, 2)) * pow_si(half_x, m) * psi_series;
    return sum;
}

// Dispatch on the parity of n for K_{(n-2)/2}.
inline BigFloat bessel_K_order_half_n(int n, const BigFloat& x, SpecialFunctionTable& table = default_table()) {
    if (n % 2 == 1) return bessel_K_half((n - 3) / 2, x, table);
    return bessel_K_int((n - 2) / 2, x, table);
}

// Finite sum S_l(x) = sum_{m=0}^{floor(l/2)} x^{-1-l+2m} (-1)^m (2(l-m)-1)!! / (2^m m!).
// The m! follows the residue-sum derivation; the printed m!! variant is
// rejected by the kernel-equivalence tests.
inline BigFloat s_ell(int ell, const BigFloat& x) {
    if (ell < 0) throw std::domain_error("s_ell: negative order");
    if (!(x > BigFloat(0L))) throw std::domain_error("s_ell: x must be positive");
    BigFloat sum(0L);
    for (int m = 0; m <= ell / 2; ++m) {
        Rational c = Rational(exact::double_factorial(2 * (ell - m) - 1)) /
                     (exact::pow_rational(Rational(2), m) * Rational(exact::factorial(m)));
        if (m % 2 == 1) c = -c;
        sum += BigFloat(c) * pow_si(x, -1 - ell + 2 * m);
    }
    return sum;
}

} // namespace parametrix::special
