#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace parametrix::exact {

// Exact rational arithmetic is delegated to GMP; mpq_class keeps values
// canonical (lowest terms, positive denominator) after canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Rational& q) {
    if (!is_integer(q)) throw std::domain_error("rational: not an integer");
    if (!q.get_num().fits_slong_p()) throw std::domain_error("rational: integer too large");
    return q.get_num().get_si();
}

// Renders "p" for integers and "p/q" otherwise; the parser accepts both.
inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    try {
        Rational q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
}

inline Rational pow_rational(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? q : Rational(1) / q;
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational r(1);
    while (k) {
        if (k & 1ul) r *= base;
        base *= base;
        k >>= 1ul;
    }
    return r;
}

inline Integer factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// (-1)!! = 1 by the empty-product convention.
inline Integer double_factorial(long n) {
    if (n < -1) throw std::domain_error("double factorial below -1");
    if (n <= 0) return Integer(1);
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// H_p = sum_{k=1}^p 1/k, exact.
inline Rational harmonic(long p) {
    Rational h(0);
    for (long k = 1; k <= p; ++k) h += make_rational(1, k);
    return h;
}

} // namespace parametrix::exact
