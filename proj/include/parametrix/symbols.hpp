#pragma once

#include "parametrix/once_map.hpp"
#include "parametrix/operators.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace parametrix::symbols {

using exact::ParamPoly;
using exact::PPoly;
using exact::QuadExt;
using exact::Rational;
using ops::ConeOperator;
using ops::ContourSpec;

struct ContourViolation : std::runtime_error {
    explicit ContourViolation(const std::string& what) : std::runtime_error(what) {}
};

// Rational function of the Mellin covariable w at a fixed eigenvalue:
// scalar * numerator(w) / prod (w - root)^mult. Always kept reduced, i.e. no
// denominator root is a zero of the numerator, and a constant numerator is
// folded into the scalar.
struct MellinSymbol {
    ParamPoly scalar{1L};
    PPoly numerator{ParamPoly(1L)};
    std::vector<std::pair<QuadExt, int>> denominator; // sorted by root value

    bool is_zero() const { return scalar.is_zero() || numerator.is_zero(); }

    static MellinSymbol zero() {
        MellinSymbol s;
        s.scalar = ParamPoly();
        return s;
    }
    static MellinSymbol one() { return MellinSymbol{}; }
    static MellinSymbol constant(ParamPoly c) {
        MellinSymbol s;
        s.scalar = std::move(c);
        return s;
    }
};

namespace detail {

inline void insert_root(std::vector<std::pair<QuadExt, int>>& roots, const QuadExt& r, int mult) {
    auto it = std::lower_bound(roots.begin(), roots.end(), r,
                               [](const auto& entry, const QuadExt& v) { return compare(entry.first, v) < 0; });
    if (it != roots.end() && it->first == r)
        it->second += mult;
    else
        roots.insert(it, {r, mult});
}

inline void normalize(MellinSymbol& s) {
    if (s.scalar.is_zero() || s.numerator.is_zero()) {
        s = MellinSymbol::zero();
        return;
    }
    if (s.numerator.degree() == 0) {
        s.scalar = s.scalar * s.numerator.coeff(0);
        s.numerator = PPoly(ParamPoly(1L));
    }
}

// Cancel numerator zeros against denominator roots (eager reduction).
inline void reduce(MellinSymbol& s) {
    if (s.is_zero()) {
        s = MellinSymbol::zero();
        return;
    }
    std::vector<std::pair<QuadExt, int>> kept;
    kept.reserve(s.denominator.size());
    for (auto& [root, mult] : s.denominator) {
        while (mult > 0 && s.numerator.eval(root).is_zero()) {
            auto [q, rem] = s.numerator.divide_linear(root);
            s.numerator = std::move(q);
            --mult;
        }
        if (mult > 0) kept.emplace_back(root, mult);
    }
    s.denominator = std::move(kept);
    normalize(s);
}

} // namespace detail

inline MellinSymbol operator*(const MellinSymbol& x, const MellinSymbol& y) {
    if (x.is_zero() || y.is_zero()) return MellinSymbol::zero();
    MellinSymbol r;
    r.scalar = x.scalar * y.scalar;
    r.numerator = x.numerator * y.numerator;
    r.denominator = x.denominator;
    for (const auto& [root, mult] : y.denominator) detail::insert_root(r.denominator, root, mult);
    detail::reduce(r);
    return r;
}

inline MellinSymbol operator*(const MellinSymbol& x, const PPoly& p) {
    if (x.is_zero() || p.is_zero()) return MellinSymbol::zero();
    MellinSymbol r = x;
    r.numerator = r.numerator * p;
    detail::reduce(r);
    return r;
}

inline MellinSymbol operator*(const MellinSymbol& x, const ParamPoly& c) {
    if (x.is_zero() || c.is_zero()) return MellinSymbol::zero();
    MellinSymbol r = x;
    r.scalar = r.scalar * c;
    return r;
}

inline MellinSymbol operator-(const MellinSymbol& x) {
    MellinSymbol r = x;
    r.scalar = -r.scalar;
    return r;
}

// Substitution w -> w + s.
inline MellinSymbol shifted(const MellinSymbol& x, const Rational& s) {
    if (x.is_zero() || s == 0) return x;
    MellinSymbol r;
    r.scalar = x.scalar;
    r.numerator = x.numerator.shifted(QuadExt(s));
    r.denominator.reserve(x.denominator.size());
    for (const auto& [root, mult] : x.denominator) r.denominator.emplace_back(root - QuadExt(s), mult);
    std::sort(r.denominator.begin(), r.denominator.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    return r;
}

inline MellinSymbol operator+(const MellinSymbol& x, const MellinSymbol& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    // Common denominator: per-root maximum multiplicity.
    std::vector<std::pair<QuadExt, int>> common = x.denominator;
    for (const auto& [root, mult] : y.denominator) {
        auto it = std::find_if(common.begin(), common.end(), [&](const auto& e) { return e.first == root; });
        if (it == common.end())
            detail::insert_root(common, root, mult);
        else
            it->second = std::max(it->second, mult);
    }
    auto complement = [&common](const MellinSymbol& s) {
        PPoly num = s.numerator * s.scalar;
        for (const auto& [root, mult] : common) {
            int have = 0;
            for (const auto& [r2, m2] : s.denominator)
                if (r2 == root) have = m2;
            for (int k = have; k < mult; ++k)
                num = num * PPoly(std::vector<ParamPoly>{ParamPoly(-root), ParamPoly(1L)});
        }
        return num;
    };
    MellinSymbol r;
    r.scalar = ParamPoly(1L);
    r.numerator = complement(x) + complement(y);
    r.denominator = std::move(common);
    detail::reduce(r);
    return r;
}

inline MellinSymbol operator-(const MellinSymbol& x, const MellinSymbol& y) { return x + (-y); }

inline bool equal(const MellinSymbol& x, const MellinSymbol& y) { return (x - y).is_zero(); }

// Numeric evaluation with parameter substitution, for the contour oracle.
inline BigComplex eval_complex(const MellinSymbol& s, const BigComplex& w,
                               const std::map<std::string, BigFloat>& params) {
    if (s.is_zero()) return BigComplex{BigFloat(0L), BigFloat(0L)};
    BigComplex acc{s.scalar.evaluate_big(params), BigFloat(0L)};
    acc = acc * s.numerator.eval_complex(w, params);
    for (const auto& [root, mult] : s.denominator) {
        BigComplex factor = w - BigComplex{root.to_bigfloat(), BigFloat(0L)};
        acc = acc / pow_ui(factor, static_cast<unsigned>(mult));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Conormal inversion and the recursive parametrix symbols.
// ---------------------------------------------------------------------------

// h_0^{(-1)}(w, lambda_l) = 1 / h_0(w - 2, lambda_l), in factored form with
// the two roots 2 - a1/2 +/- Delta w(lambda_l).
inline MellinSymbol conormal_inverse(const ConeOperator& op, int ell) {
    auto [hi, lo] = op.conormal_pole_pair(ell);
    MellinSymbol s;
    s.denominator.push_back({lo, 1});
    s.denominator.push_back({hi, 1});
    if (compare(lo, hi) > 0) std::swap(s.denominator.front(), s.denominator.back());
    return s;
}

// Memoized table of parametrix symbols h_j^{(-1)}(., lambda_l), computed by
// the recursion
//   h_j^{(-1)}(w) = -( sum_{i>=1} h_{j-i}^{(-1)}(w-i) h_i(w-2) ) h_0^{(-1)}(w).
// Shared state is restricted to the once-only memo map; returned symbols are
// immutable.
class SymbolTable {
public:
    explicit SymbolTable(ConeOperator op) : op_(std::move(op)) { op_.validate(); }

    const ConeOperator& op() const { return op_; }

    std::shared_ptr<const MellinSymbol> symbol(int ell, int j) {
        if (ell < 0 || j < 0) throw std::invalid_argument("symbol table: negative index");
        if (j > op_.truncation_order) throw std::invalid_argument("symbol table: order beyond truncation");
        return memo_.get_or_compute({ell, j}, [this, ell, j] { return compute(ell, j); });
    }

    long computations() const { return memo_.computations(); }

private:
    MellinSymbol compute(int ell, int j) {
        if (j == 0) return conormal_inverse(op_, ell);
        const Rational lambda = op_.base->eigenvalue(ell);
        const int top = op_.coefficient_order();
        MellinSymbol acc = MellinSymbol::zero();
        for (int i = 1; i <= std::min(j, top); ++i) {
            PPoly hi = op_.h_poly(i, lambda).shifted(QuadExt(Rational(-2)));
            if (hi.is_zero()) continue;
            MellinSymbol term = shifted(*symbol(ell, j - i), Rational(-i)) * hi;
            acc = acc + term;
        }
        if (acc.is_zero()) return MellinSymbol::zero();
        return -(acc * conormal_inverse(op_, ell));
    }

    ConeOperator op_;
    OnceMap<std::pair<int, int>, MellinSymbol> memo_;
};

inline MellinSymbol asymptotic_symbol(SymbolTable& table, int ell, int j) { return *table.symbol(ell, j); }

// ---------------------------------------------------------------------------
// Pole classification and residues.
// ---------------------------------------------------------------------------

enum class Side { left_of_contour, right_of_contour };

struct PoleDatum {
    QuadExt location;
    int order = 1;
    Side side = Side::right_of_contour;
    ParamPoly res;        // populated for order 1
    ParamPoly res1, res2; // populated for order 2
};

// Classifies the denominator roots of a reduced symbol against the contour.
// A pole exactly on the contour is a conormal-ellipticity failure and throws.
// Order-2 poles are checked against the collision condition
// 2 Delta w(lambda_l) in {1,...,j} and the predicted location family.
inline std::vector<PoleDatum> classify_poles(const MellinSymbol& sym, const ConeOperator& op, int ell, int j,
                                             const ContourSpec& contour) {
    std::vector<PoleDatum> out;
    const QuadExt contour_re{contour.real_part(op.n)};
    const QuadExt dw = op.delta_w(ell);
    for (const auto& [root, mult] : sym.denominator) {
        PoleDatum p;
        p.location = root;
        p.order = mult;
        int c = compare(root, contour_re);
        if (c == 0) {
            std::ostringstream msg;
            msg << op.name << ": pole at w = " << root.str() << " lies on the contour Re w = "
                << exact::to_string(contour.real_part(op.n)) << " (ell = " << ell << ", order " << j
                << "); choose a different gamma";
            throw ContourViolation(msg.str());
        }
        p.side = c > 0 ? Side::right_of_contour : Side::left_of_contour;
        if (mult == 2) {
            QuadExt two_dw = dw * QuadExt(2L);
            bool condition = two_dw.is_rational() && exact::is_integer(two_dw.as_rational()) &&
                             two_dw.as_rational() >= 1 && two_dw.as_rational() <= j;
            // location must be 2 - a1/2 + m + dw for some m in {0,...,j}
            QuadExt m = root - QuadExt(Rational(2) - op.a1_0() / 2) - dw;
            bool on_family = m.is_rational() && exact::is_integer(m.as_rational()) && m.as_rational() >= 0 &&
                             m.as_rational() <= j;
            if (!condition || !on_family)
                throw std::logic_error("classify_poles: order-2 pole outside the predicted family");
        } else if (mult > 2) {
            throw std::logic_error("classify_poles: pole order above 2 cannot occur for type-A symbols");
        }
        out.push_back(std::move(p));
    }
    return out;
}

// Populates the residue fields of a pole of the given symbol, exactly.
// Order 1: Res = scalar num(w0) / prod_{other} (w0 - r)^m.
// Order 2: with g(w) = (w - w0)^2 sym(w),
//   Res^(1) = g(w0),  Res^(2) = g'(w0).
inline PoleDatum residue(const MellinSymbol& sym, PoleDatum pole) {
    const QuadExt& w0 = pole.location;
    int found = 0;
    QuadExt dval(1L);
    QuadExt dlog(0L); // D'(w0)/D(w0) = sum m/(w0 - r) over the other roots
    for (const auto& [root, mult] : sym.denominator) {
        if (root == w0) {
            found = mult;
            continue;
        }
        QuadExt diff = w0 - root;
        for (int k = 0; k < mult; ++k) dval = dval * diff;
        dlog = dlog + QuadExt(Rational(mult)) / diff;
    }
    if (found != pole.order) throw std::invalid_argument("residue: pole order mismatch with symbol");
    ParamPoly num_val = sym.numerator.eval(w0);
    if (pole.order == 1) {
        pole.res = sym.scalar * num_val / dval;
    } else if (pole.order == 2) {
        ParamPoly dnum_val = sym.numerator.derivative().eval(w0);
        pole.res1 = sym.scalar * num_val / dval;
        pole.res2 = sym.scalar * (dnum_val - num_val * dlog) / dval;
    } else {
        throw std::invalid_argument("residue: unsupported pole order");
    }
    return pole;
}

inline std::vector<PoleDatum> poles_with_residues(const MellinSymbol& sym, const ConeOperator& op, int ell, int j,
                                                  const ContourSpec& contour) {
    auto poles = classify_poles(sym, op, ell, j, contour);
    for (auto& p : poles) p = residue(sym, p);
    return poles;
}

// ---------------------------------------------------------------------------
// Exact self-consistency of the defining symbol equations:
//   h_0^{(-1)}(w+2) h_0(w) = 1 and, for 1 <= j <= J,
//   sum_{i=0}^{j} h_{j-i}^{(-1)}(w+2-i) h_i(w) = 0.
// ---------------------------------------------------------------------------

struct IdentityReport {
    bool ok = true;
    int failed_order = -1;
    std::string message;
};

inline IdentityReport defining_identity_check(SymbolTable& table, int ell, int J) {
    const ConeOperator& op = table.op();
    const Rational lambda = op.base->eigenvalue(ell);
    IdentityReport rep;
    for (int j = 0; j <= J; ++j) {
        MellinSymbol acc = MellinSymbol::zero();
        for (int i = 0; i <= j; ++i) {
            PPoly hi = op.h_poly(i, lambda);
            if (hi.is_zero()) continue;
            acc = acc + shifted(*table.symbol(ell, j - i), Rational(2 - i)) * hi;
        }
        const MellinSymbol expected = j == 0 ? MellinSymbol::one() : MellinSymbol::zero();
        if (!equal(acc, expected)) {
            rep.ok = false;
            rep.failed_order = j;
            rep.message = "defining identity fails at (ell, j) = (" + std::to_string(ell) + ", " +
                          std::to_string(j) + ")";
            return rep;
        }
    }
    return rep;
}

} // namespace parametrix::symbols
