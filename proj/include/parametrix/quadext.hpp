#pragma once

#include "parametrix/bigfloat.hpp"
#include "parametrix/rational.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace parametrix::exact {

struct IncompatibleExtension : std::domain_error {
    IncompatibleExtension() : std::domain_error("quadext: mixing distinct quadratic extensions") {}
};

// Element a + b*sqrt(d) of a real quadratic extension of the rationals.
// Canonical form: d is a positive squarefree integer and b != 0, or b = 0 and
// d = 0. Perfect-square discriminants are folded into the rational part at
// construction, so equality is plain field comparison.
class QuadExt {
public:
    QuadExt() : a_(0), b_(0), d_(0) {}
    QuadExt(long v) : a_(v), b_(0), d_(0) {}
    QuadExt(const Rational& v) : a_(v), b_(0), d_(0) {}
    QuadExt(Rational a, Rational b, Rational d) { normalize(std::move(a), std::move(b), std::move(d)); }

    const Rational& rat_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const Rational& discriminant() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    const Rational& as_rational() const {
        if (!is_rational()) throw std::domain_error("quadext: value is irrational");
        return a_;
    }

    bool compatible(const QuadExt& o) const { return b_ == 0 || o.b_ == 0 || d_ == o.d_; }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        Rational d = merge_disc(x, y);
        QuadExt r;
        r.normalize(x.a_ + y.a_, x.b_ + y.b_, d);
        return r;
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        Rational d = merge_disc(x, y);
        QuadExt r;
        r.normalize(x.a_ - y.a_, x.b_ - y.b_, d);
        return r;
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        Rational d = merge_disc(x, y);
        QuadExt r;
        r.normalize(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
        return r;
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
    QuadExt operator-() const {
        QuadExt r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

    QuadExt inverse() const {
        if (is_zero()) throw std::domain_error("quadext: division by zero");
        // (a - b sqrt(d)) / (a^2 - b^2 d); the norm cannot vanish since d is
        // squarefree and not a perfect square.
        Rational norm = a_ * a_ - b_ * b_ * d_;
        if (norm == 0) throw std::logic_error("quadext: vanishing field norm");
        QuadExt r;
        r.normalize(a_ / norm, -b_ / norm, d_);
        return r;
    }

    QuadExt conjugate() const {
        QuadExt r = *this;
        r.b_ = -r.b_;
        return r;
    }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    // Exact sign of a + b*sqrt(d).
    int sign() const {
        if (b_ == 0) return sgn(a_);
        if (a_ == 0) return sgn(b_);
        if (sgn(a_) == sgn(b_)) return sgn(a_);
        int c = cmp(a_ * a_, b_ * b_ * d_);
        if (c == 0) return 0;
        return c > 0 ? sgn(a_) : sgn(b_);
    }

    // Exact comparison; requires compatible extensions.
    friend int compare(const QuadExt& x, const QuadExt& y) { return (x - y).sign(); }
    friend bool operator<(const QuadExt& x, const QuadExt& y) { return compare(x, y) < 0; }
    friend bool operator>(const QuadExt& x, const QuadExt& y) { return compare(x, y) > 0; }

    BigFloat to_bigfloat() const {
        BigFloat v(a_);
        if (b_ != 0) v += BigFloat(b_) * sqrt(BigFloat(d_));
        return v;
    }

    // Correctly rounded up to the guard precision (64 bits beyond the target).
    double to_double() const {
        if (b_ == 0) return BigFloat(a_).to_double();
        BigFloat v(BigFloat::with_prec_t{}, 53 + 64);
        mpfr_set_q(v.raw(), a_.get_mpq_t(), MPFR_RNDN);
        BigFloat s(BigFloat::with_prec_t{}, 53 + 64);
        mpfr_set_q(s.raw(), d_.get_mpq_t(), MPFR_RNDN);
        mpfr_sqrt(s.raw(), s.raw(), MPFR_RNDN);
        mpfr_mul_q(s.raw(), s.raw(), b_.get_mpq_t(), MPFR_RNDN);
        v += s;
        return v.to_double();
    }

    // "a + b*sqrt(d)" with rationals in p/q form; plain "a" when rational.
    std::string str() const {
        if (b_ == 0) return to_string(a_);
        return to_string(a_) + " + " + to_string(b_) + "*sqrt(" + to_string(d_) + ")";
    }

    static QuadExt parse(const std::string& s);

private:
    static int sgn(const Rational& q) { return sgn_int(mpq_sgn(q.get_mpq_t())); }
    static int sgn_int(int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
    static Rational merge_disc(const QuadExt& x, const QuadExt& y) {
        if (!x.compatible(y)) throw IncompatibleExtension();
        return x.b_ != 0 ? x.d_ : y.d_;
    }

    void normalize(Rational a, Rational b, Rational d) {
        if (sgn(d) < 0) throw std::domain_error("quadext: negative discriminant (operator is not type-A)");
        if (b == 0 || d == 0) {
            a_ = std::move(a);
            b_ = 0;
            d_ = 0;
            return;
        }
        // sqrt(num/den) = sqrt(num*den)/den; reduce to an integer radicand.
        Integer m = d.get_num() * d.get_den();
        b /= d.get_den();
        // Strip square factors: small trial division, then a perfect-square test
        // on the remaining cofactor.
        Integer square_part(1);
        for (long p = 2; p * p <= 65536L * 65536L; p = (p == 2 ? 3 : p + 2)) {
            Integer pp = Integer(p) * Integer(p);
            if (pp > m) break;
            while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
                m /= pp;
                square_part *= p;
            }
        }
        if (mpz_perfect_square_p(m.get_mpz_t())) {
            Integer root;
            mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
            square_part *= root;
            m = 1;
        }
        b *= Rational(square_part);
        if (m == 1) {
            a_ = a + b;
            b_ = 0;
            d_ = 0;
            return;
        }
        a_ = std::move(a);
        b_ = std::move(b);
        d_ = Rational(m);
    }

    Rational a_, b_, d_;
};

// Canonical constructor mirroring the normalization rules; rejects d < 0.
inline QuadExt quad_normalize(const Rational& a, const Rational& b, const Rational& d) {
    return QuadExt(a, b, d);
}

// sqrt of a nonnegative rational as an exact QuadExt.
inline QuadExt quad_sqrt(const Rational& radicand) { return QuadExt(Rational(0), Rational(1), radicand); }

inline QuadExt QuadExt::parse(const std::string& s) {
    auto pos = s.find("sqrt(");
    if (pos == std::string::npos) return QuadExt(parse_rational(s));
    auto close = s.rfind(')');
    if (close == std::string::npos || close < pos) throw std::invalid_argument("quadext: cannot parse '" + s + "'");
    Rational d = parse_rational(s.substr(pos + 5, close - pos - 5));
    auto star = s.rfind('*', pos);
    if (star == std::string::npos) throw std::invalid_argument("quadext: cannot parse '" + s + "'");
    std::string head = s.substr(0, star);
    // head is "a + b" or just "b"
    Rational a(0), b;
    auto plus = head.rfind(" + ");
    if (plus == std::string::npos) {
        b = parse_rational(head);
    } else {
        a = parse_rational(head.substr(0, plus));
        b = parse_rational(head.substr(plus + 3));
    }
    return QuadExt(a, b, d);
}

struct QuadExtLess {
    bool operator()(const QuadExt& x, const QuadExt& y) const { return compare(x, y) < 0; }
};

} // namespace parametrix::exact
