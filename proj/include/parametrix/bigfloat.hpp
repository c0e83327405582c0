#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace parametrix {

// Arbitrary-precision real number backed by MPFR. All instances created
// after set_working_digits() use the new precision; mixed-precision
// operations round to the precision of the result object (max of operands).
class BigFloat {
public:
    // Default working precision: 50 significant decimal digits plus guard bits.
    static mpfr_prec_t& default_prec() {
        static mpfr_prec_t prec = 200;
        return prec;
    }
    static void set_working_digits(int digits) {
        if (digits < 10 || digits > 10000) throw std::invalid_argument("BigFloat: unreasonable precision");
        default_prec() = static_cast<mpfr_prec_t>(digits * 3.3219280948873623) + 16;
    }

    struct with_prec_t {};
    BigFloat() { mpfr_init2(x_, default_prec()); mpfr_set_zero(x_, 1); }
    BigFloat(with_prec_t, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    BigFloat(double v) { mpfr_init2(x_, default_prec()); mpfr_set_d(x_, v, MPFR_RNDN); }
    BigFloat(long v) { mpfr_init2(x_, default_prec()); mpfr_set_si(x_, v, MPFR_RNDN); }
    BigFloat(int v) { mpfr_init2(x_, default_prec()); mpfr_set_si(x_, v, MPFR_RNDN); }
    BigFloat(const mpq_class& q) {
        mpfr_init2(x_, default_prec());
        mpfr_set_q(x_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const mpz_class& z) {
        mpfr_init2(x_, default_prec());
        mpfr_set_z(x_, z.get_mpz_t(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(x_, 64);
        mpfr_swap(x_, o.x_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(x_); }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }

    static BigFloat pi() { BigFloat r; mpfr_const_pi(r.x_, MPFR_RNDN); return r; }
    static BigFloat euler_gamma() { BigFloat r; mpfr_const_euler(r.x_, MPFR_RNDN); return r; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { BigFloat r(with_prec_t{}, maxprec(a, b)); mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { BigFloat r(with_prec_t{}, maxprec(a, b)); mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { BigFloat r(with_prec_t{}, maxprec(a, b)); mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { BigFloat r(with_prec_t{}, maxprec(a, b)); mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
    BigFloat operator-() const { BigFloat r(with_prec_t{}, mpfr_get_prec(x_)); mpfr_neg(r.x_, x_, MPFR_RNDN); return r; }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(x_, x_, o.x_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(x_, x_, o.x_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(x_, x_, o.x_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(x_, x_, o.x_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

    friend BigFloat abs(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_abs(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat sqrt(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_sqrt(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat exp(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_exp(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat log(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_log(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat cos(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_cos(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat sin(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_sin(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat cosh(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_cosh(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat sinh(const BigFloat& a) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_sinh(r.x_, a.x_, MPFR_RNDN); return r; }
    friend BigFloat pow_si(const BigFloat& a, long e) { BigFloat r(with_prec_t{}, mpfr_get_prec(a.x_)); mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN); return r; }
    // a^e for real exponent, a > 0
    friend BigFloat pow(const BigFloat& a, const BigFloat& e) { BigFloat r(maxprec(a, e)); mpfr_pow(r.x_, a.x_, e.x_, MPFR_RNDN); return r; }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, x_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    static mpfr_prec_t maxprec(const BigFloat& a, const BigFloat& b) {
        mpfr_prec_t pa = mpfr_get_prec(a.x_), pb = mpfr_get_prec(b.x_);
        return pa > pb ? pa : pb;
    }
    mpfr_t x_;
};

// Complex value over BigFloat; just enough arithmetic for contour integrals.
struct BigComplex {
    BigFloat re, im;

    BigComplex() = default;
    BigComplex(BigFloat r) : re(std::move(r)), im(0) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    BigComplex operator-() const { return {-re, -im}; }

    BigFloat norm() const { return re * re + im * im; }
};

inline BigComplex pow_ui(const BigComplex& z, unsigned e) {
    BigComplex r{BigFloat(1L), BigFloat(0L)};
    BigComplex base = z;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

} // namespace parametrix
