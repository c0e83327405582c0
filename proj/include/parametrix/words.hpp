#pragma once

#include "parametrix/kernel.hpp"
#include "parametrix/symbols.hpp"

#include <string>
#include <vector>

namespace parametrix::words {

using exact::Integer;
using exact::ParamPoly;
using exact::QuadExt;
using exact::Rational;
using ops::ConeOperator;
using symbols::MellinSymbol;

// Binary word over {1, 2}; the weight p is the sum of the letters. Indexes
// one term of the Coulomb parametrix symbol.
struct BinaryWord {
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
    int count_ones() const {
        int c = 0;
        for (int a : letters) c += a == 1;
        return c;
    }
    int count_twos() const {
        int c = 0;
        for (int a : letters) c += a == 2;
        return c;
    }
    int weight() const {
        int w = 0;
        for (int a : letters) w += a;
        return w;
    }

    // p_0 = p, p_j = p - sum_{k<=j} alpha_k; strictly decreasing to p_N = 0.
    std::vector<int> partial_sums() const {
        std::vector<int> ps;
        ps.reserve(letters.size() + 1);
        int acc = weight();
        ps.push_back(acc);
        for (int a : letters) {
            acc -= a;
            ps.push_back(acc);
        }
        return ps;
    }

    friend bool operator==(const BinaryWord& a, const BinaryWord& b) { return a.letters == b.letters; }
    friend bool operator<(const BinaryWord& a, const BinaryWord& b) { return a.letters < b.letters; }
};

// All words of weight p in lexicographic order (1 < 2). S_0 = {empty word}.
// Words of weight p are the 1-prefixed words of weight p-1 followed by the
// 2-prefixed words of weight p-2, which preserves lexicographic order.
inline std::vector<BinaryWord> enumerate_words(int p) {
    if (p < 0) throw std::invalid_argument("enumerate_words: negative weight");
    if (p == 0) return {BinaryWord{}};
    std::vector<BinaryWord> out;
    for (const auto& w : enumerate_words(p - 1)) {
        BinaryWord v;
        v.letters.reserve(w.letters.size() + 1);
        v.letters.push_back(1);
        v.letters.insert(v.letters.end(), w.letters.begin(), w.letters.end());
        out.push_back(std::move(v));
    }
    if (p >= 2) {
        for (const auto& w : enumerate_words(p - 2)) {
            BinaryWord v;
            v.letters.reserve(w.letters.size() + 1);
            v.letters.push_back(2);
            v.letters.insert(v.letters.end(), w.letters.begin(), w.letters.end());
            out.push_back(std::move(v));
        }
    }
    return out;
}

// |S_p| via the binomial sum over the number of 2s; equals the Fibonacci
// number F(p) with F(0) = F(1) = 1.
inline Integer cardinality(int p) {
    if (p < 0) throw std::invalid_argument("cardinality: negative weight");
    Integer total(0);
    for (int twos = 0; twos <= p / 2; ++twos) total += exact::binomial(p - twos, twos);
    return total;
}

namespace detail {

// The word formula needs constant order-1/2 symbols and nothing above order 2.
inline std::pair<ParamPoly, ParamPoly> word_constants(const ConeOperator& op) {
    if (op.coefficient_order() > 2)
        throw std::invalid_argument(op.name + ": word expansion needs coefficients of order <= 2");
    Rational lambda0 = op.base->eigenvalue(0);
    exact::PPoly h1 = op.h_poly(1, lambda0);
    exact::PPoly h2 = op.h_poly(2, lambda0);
    if (h1.degree() > 0 || h2.degree() > 0)
        throw std::invalid_argument(op.name + ": word expansion needs constant h_1, h_2");
    // b^{(1)}, b^{(2)} must vanish, otherwise h_i depends on ell.
    if (!op.coeff(op.b, 1).is_zero() || !op.coeff(op.b, 2).is_zero())
        throw std::invalid_argument(op.name + ": word expansion needs ell-independent h_1, h_2");
    return {h1.coeff(0), h2.coeff(0)};
}

} // namespace detail

// Word-sum form of the order-p parametrix symbol,
//   h_p^{(-1)}(w) = sum_{alpha in S_p} (-h_1)^{N_Z} (-h_2)^{N_kappa}
//                   prod_{j=0}^{N} h_0^{(-1)}(w - p_j),
// which for the Coulomb operator is the (-1)^{N_Z} 2^N Z^{N_Z} (kappa^2)^{N_kappa}
// expansion. Computed independently of the recursion.
inline MellinSymbol word_symbol(const ConeOperator& op, int ell, int p) {
    auto [h1, h2] = detail::word_constants(op);
    const ParamPoly m1 = -h1, m2 = -h2;
    MellinSymbol total = MellinSymbol::zero();
    for (const auto& word : enumerate_words(p)) {
        MellinSymbol prod = MellinSymbol::one();
        for (int pj : word.partial_sums())
            prod = prod * symbols::shifted(symbols::conormal_inverse(op, ell), Rational(-pj));
        ParamPoly coeff(1L);
        for (int k = 0; k < word.count_ones(); ++k) coeff = coeff * m1;
        for (int k = 0; k < word.count_twos(); ++k) coeff = coeff * m2;
        total = total + prod * coeff;
    }
    return total;
}

// Order-p entry of the n = 3 Coulomb fundamental solution, exact:
//   k_0 = -1/(4 pi r), k_1 = (1/(4 pi r)) 2Z ln r, and for p >= 2 the two
//   word sums over S_{p-2} appended with 2 and S_{p-1} appended with 1. The
//   returned entries multiply r^{2-n+p} and exclude the p0 = 1/(4 pi) factor,
//   matching the series convention of the kernel module.
inline std::vector<kernel::SeriesEntry> coulomb_kp_symbolic(int p) {
    using kernel::SeriesEntry;
    std::vector<SeriesEntry> out;
    const ParamPoly z2 = ParamPoly::parameter("Z");
    const ParamPoly k2 = ParamPoly::parameter("kappa_sq");
    auto word_coeff = [&](const BinaryWord& w) {
        ParamPoly c{QuadExt(Rational(w.count_ones() % 2 == 0 ? 1 : -1) *
                            exact::pow_rational(Rational(2), w.length()))};
        for (int k = 0; k < w.count_ones(); ++k) c = c * z2;
        for (int k = 0; k < w.count_twos(); ++k) c = c * k2;
        return c;
    };
    if (p == 0) {
        out.push_back({ParamPoly(-1L), false});
        return out;
    }
    if (p == 1) {
        out.push_back({ParamPoly(exact::Monomial{{"Z", 1}}, QuadExt(2L)), true});
        return out;
    }
    ParamPoly plain, logc;
    for (const auto& base : enumerate_words(p - 2)) {
        BinaryWord w = base;
        w.letters.push_back(2);
        auto ps = w.partial_sums();
        Rational prod(1);
        for (int j = 0; j + 1 < static_cast<int>(ps.size()); ++j) prod *= Rational(ps[j]) * Rational(ps[j] - 1);
        plain -= word_coeff(w) * QuadExt(Rational(1) / prod);
    }
    for (const auto& base : enumerate_words(p - 1)) {
        BinaryWord w = base;
        w.letters.push_back(1);
        auto ps = w.partial_sums();
        Rational prod(1);
        Rational hsum(0);
        for (int j = 0; j + 2 < static_cast<int>(ps.size()); ++j) {
            prod *= Rational(ps[j]) * Rational(ps[j] - 1);
            hsum += exact::make_rational(1, ps[j] - 1) + exact::make_rational(1, ps[j]);
        }
        ParamPoly c = word_coeff(w) * QuadExt(Rational(1) / prod);
        logc -= c;
        plain += c * QuadExt(hsum);
    }
    if (!logc.is_zero()) out.push_back({logc, true});
    if (!plain.is_zero()) out.push_back({plain, false});
    return out;
}

inline std::vector<kernel::SeriesEntry> coulomb_kp(int p, const Rational& Z, const Rational& kappa_sq) {
    std::map<std::string, Rational> values{{"Z", Z}, {"kappa_sq", kappa_sq}};
    std::vector<kernel::SeriesEntry> out;
    for (const auto& e : coulomb_kp_symbolic(p)) {
        QuadExt v = e.coeff.evaluate(values);
        if (!v.is_zero()) out.push_back({ParamPoly(v), e.log_r});
    }
    return out;
}

} // namespace parametrix::words
