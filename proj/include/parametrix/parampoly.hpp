#pragma once

#include "parametrix/quadext.hpp"

#include <map>
#include <string>
#include <utility>

namespace parametrix::exact {

// Monomial in the named operator parameters, e.g. {kappa_sq: 1, Z: 2}.
// Exponents are strictly positive; the empty map is the constant monomial.
using Monomial = std::map<std::string, int>;

// Exact scalar that is a polynomial in the operator parameters with QuadExt
// coefficients. Symbol numerators, residues and kernel coefficients live in
// this ring, so values like -2Z or kappa^2/2 stay exact until a numeric
// substitution is requested.
class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(long v) { set_term({}, QuadExt(v)); }
    ParamPoly(const Rational& v) { set_term({}, QuadExt(v)); }
    ParamPoly(const QuadExt& v) { set_term({}, v); }
    ParamPoly(Monomial m, QuadExt coeff) { set_term(std::move(m), std::move(coeff)); }

    static ParamPoly parameter(const std::string& name, int power = 1) {
        Monomial m;
        m[name] = power;
        return ParamPoly(std::move(m), QuadExt(1L));
    }

    const std::map<Monomial, QuadExt>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    QuadExt constant_value() const {
        if (terms_.empty()) return QuadExt(0L);
        if (!is_constant()) throw std::domain_error("parampoly: value depends on parameters");
        return terms_.begin()->second;
    }

    friend ParamPoly operator+(const ParamPoly& x, const ParamPoly& y) {
        ParamPoly r = x;
        for (const auto& [m, c] : y.terms_) r.add_term(m, c);
        return r;
    }
    friend ParamPoly operator-(const ParamPoly& x, const ParamPoly& y) {
        ParamPoly r = x;
        for (const auto& [m, c] : y.terms_) r.add_term(m, -c);
        return r;
    }
    friend ParamPoly operator*(const ParamPoly& x, const ParamPoly& y) {
        ParamPoly r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) {
                Monomial m = mx;
                for (const auto& [name, e] : my) m[name] += e;
                r.add_term(m, cx * cy);
            }
        return r;
    }
    friend ParamPoly operator*(const ParamPoly& x, const QuadExt& s) {
        ParamPoly r;
        for (const auto& [m, c] : x.terms_) r.add_term(m, c * s);
        return r;
    }
    friend ParamPoly operator*(const QuadExt& s, const ParamPoly& x) { return x * s; }
    friend ParamPoly operator/(const ParamPoly& x, const QuadExt& s) { return x * s.inverse(); }
    ParamPoly operator-() const {
        ParamPoly r;
        for (const auto& [m, c] : terms_) r.add_term(m, -c);
        return r;
    }
    ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
    ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    friend bool operator==(const ParamPoly& x, const ParamPoly& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const ParamPoly& x, const ParamPoly& y) { return !(x == y); }

    // Exact substitution of a single parameter; the rest stay symbolic.
    ParamPoly substitute(const std::string& name, const Rational& value) const {
        ParamPoly out;
        for (const auto& [m, c] : terms_) {
            auto it = m.find(name);
            if (it == m.end()) {
                out.add_term(m, c);
                continue;
            }
            Monomial reduced = m;
            reduced.erase(name);
            out.add_term(reduced, c * QuadExt(pow_rational(value, it->second)));
        }
        return out;
    }

    // Exact substitution of rational parameter values.
    QuadExt evaluate(const std::map<std::string, Rational>& values) const {
        QuadExt acc(0L);
        for (const auto& [m, c] : terms_) {
            Rational factor(1);
            for (const auto& [name, e] : m) {
                auto it = values.find(name);
                if (it == values.end()) throw std::invalid_argument("parampoly: missing value for parameter '" + name + "'");
                factor *= pow_rational(it->second, e);
            }
            acc += c * QuadExt(factor);
        }
        return acc;
    }

    BigFloat evaluate_big(const std::map<std::string, BigFloat>& values) const {
        BigFloat acc(0L);
        for (const auto& [m, c] : terms_) {
            BigFloat factor(1L);
            for (const auto& [name, e] : m) {
                auto it = values.find(name);
                if (it == values.end()) throw std::invalid_argument("parampoly: missing value for parameter '" + name + "'");
                factor *= pow_si(it->second, e);
            }
            acc += c.to_bigfloat() * factor;
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) out += " + ";
            first = false;
            out += "(" + c.str() + ")";
            for (const auto& [name, e] : m) {
                out += "*" + name;
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    static Monomial canonical(Monomial m) {
        for (auto it = m.begin(); it != m.end();) {
            if (it->second == 0)
                it = m.erase(it);
            else if (it->second < 0)
                throw std::invalid_argument("parampoly: negative parameter exponent");
            else
                ++it;
        }
        return m;
    }
    void set_term(Monomial m, QuadExt c) {
        if (!c.is_zero()) terms_.emplace(canonical(std::move(m)), std::move(c));
    }
    void add_term(const Monomial& m, const QuadExt& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<Monomial, QuadExt> terms_;
};

inline bool is_zero(const QuadExt& v) { return v.is_zero(); }
inline bool is_zero(const ParamPoly& v) { return v.is_zero(); }

} // namespace parametrix::exact
