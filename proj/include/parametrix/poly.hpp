#pragma once

#include "parametrix/parampoly.hpp"

#include <utility>
#include <vector>

namespace parametrix::exact {

// Univariate polynomial, coefficients lowest degree first. The coefficient
// ring C is QuadExt or ParamPoly; the zero polynomial has no coefficients.
template <class C>
class Poly {
public:
    Poly() = default;
    Poly(C constant) {
        if (!exact::is_zero(constant)) c_.push_back(std::move(constant));
    }
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly variable() { return Poly(std::vector<C>{C(0L), C(1L)}); }

    const std::vector<C>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    C coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : C(0L); }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<C> r(std::max(p.c_.size(), q.c_.size()), C(0L));
        for (size_t i = 0; i < p.c_.size(); ++i) r[i] = r[i] + p.c_[i];
        for (size_t i = 0; i < q.c_.size(); ++i) r[i] = r[i] + q.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& p, const Poly& q) {
        std::vector<C> r(std::max(p.c_.size(), q.c_.size()), C(0L));
        for (size_t i = 0; i < p.c_.size(); ++i) r[i] = r[i] + p.c_[i];
        for (size_t i = 0; i < q.c_.size(); ++i) r[i] = r[i] - q.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly();
        std::vector<C> r(p.c_.size() + q.c_.size() - 1, C(0L));
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) r[i + j] = r[i + j] + p.c_[i] * q.c_[j];
        return Poly(std::move(r));
    }
    template <class S>
    friend Poly operator*(const Poly& p, const S& s) {
        std::vector<C> r;
        r.reserve(p.c_.size());
        for (const auto& ci : p.c_) r.push_back(ci * s);
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<C> r;
        r.reserve(c_.size());
        for (const auto& ci : c_) r.push_back(-ci);
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& p, const Poly& q) { return (p - q).is_zero(); }
    friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

    // Horner evaluation at a point of the coefficient ring (or a scalar that
    // multiplies into it).
    template <class X>
    C eval(const X& x) const {
        if (c_.empty()) return C(0L);
        C acc = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    BigComplex eval_complex(const BigComplex& w, const std::map<std::string, BigFloat>& params) const
        requires std::is_same_v<C, ParamPoly>
    {
        BigComplex acc{BigFloat(0L), BigFloat(0L)};
        for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
            acc = acc * w + BigComplex{c_[i].evaluate_big(params), BigFloat(0L)};
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<C> r;
        r.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * QuadExt(Rational(static_cast<long>(i))));
        return Poly(std::move(r));
    }

    // Taylor shift: returns q with q(w) = p(w + s).
    Poly shifted(const QuadExt& s) const {
        Poly lin(std::vector<C>{C(s), C(1L)});
        Poly acc;
        for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) acc = acc * lin + Poly(c_[i]);
        return acc;
    }

    // Exact synthetic division by (w - root); the remainder is returned so the
    // caller can insist on it vanishing.
    std::pair<Poly, C> divide_linear(const QuadExt& root) const {
        if (c_.empty()) return {Poly(), C(0L)};
        std::vector<C> q(c_.size() - 1, C(0L));
        C carry = c_.back();
        for (int i = static_cast<int>(c_.size()) - 2; i >= 0; --i) {
            q[i] = carry;
            carry = c_[i] + carry * root;
        }
        return {Poly(std::move(q)), carry};
    }

private:
    void trim() {
        while (!c_.empty() && exact::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<C> c_;
};

using QPoly = Poly<QuadExt>;
using PPoly = Poly<ParamPoly>;

// poly_eval / poly_divide_root with the contract names used elsewhere.
inline QuadExt poly_eval(const QPoly& p, const QuadExt& x) { return p.eval(x); }

inline QPoly poly_divide_root(const QPoly& p, const QuadExt& root) {
    auto [q, rem] = p.divide_linear(root);
    if (!rem.is_zero()) throw std::domain_error("poly_divide_root: value is not a root");
    return q;
}

} // namespace parametrix::exact
