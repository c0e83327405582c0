#pragma once

#include "parametrix/symbols.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace parametrix::kernel {

using exact::ParamPoly;
using exact::QuadExt;
using exact::Rational;
using ops::ConeOperator;
using ops::ContourSpec;
using symbols::MellinSymbol;
using symbols::PoleDatum;
using symbols::Side;
using symbols::SymbolTable;

enum class Region { r_greater, r_less };

// One separable term of a kernel K_j: coefficient * r^a * rt^b, optionally
// carrying ln(r) or ln(rt), valid in one of the two radial regions.
struct KernelTerm {
    int ell = 0;
    ParamPoly coefficient;
    QuadExt r_exponent;
    QuadExt rtilde_exponent;
    bool log_r = false;
    bool log_rtilde = false;
    Region region = Region::r_greater;
};

// Enumerates the three sums of the integral-kernel representation of the
// order-j parametrix piece:
//   right-side simple poles:  -Res, exponents (2 - w_k, w_k - n), r > rt;
//   right-side double poles:  the ln(r/rt) pair split into +Res1 ln r,
//                             -Res1 ln rt, and -Res2, all at r > rt;
//   left-side simple poles:   +Res, r < rt.
inline std::vector<KernelTerm> kernel_terms(SymbolTable& table, int ell, int j, const ContourSpec& contour) {
    const ConeOperator& op = table.op();
    const MellinSymbol sym = *table.symbol(ell, j);
    std::vector<KernelTerm> out;
    if (sym.is_zero()) return out;
    const QuadExt dim{Rational(op.n)};
    for (const auto& pole : symbols::poles_with_residues(sym, op, ell, j, contour)) {
        KernelTerm base;
        base.ell = ell;
        base.r_exponent = QuadExt(2L) - pole.location;
        base.rtilde_exponent = pole.location - dim;
        if (pole.side == Side::right_of_contour) {
            base.region = Region::r_greater;
            if (pole.order == 1) {
                base.coefficient = -pole.res;
                out.push_back(base);
            } else {
                KernelTerm t = base;
                t.coefficient = pole.res1;
                t.log_r = true;
                out.push_back(t);
                t = base;
                t.coefficient = -pole.res1;
                t.log_rtilde = true;
                out.push_back(t);
                if (!pole.res2.is_zero()) {
                    t = base;
                    t.coefficient = -pole.res2;
                    t.log_rtilde = false;
                    out.push_back(t);
                }
            }
        } else {
            if (pole.order != 1)
                throw std::logic_error("kernel_terms: order-2 pole left of the contour is outside the "
                                       "type-A construction");
            base.region = Region::r_less;
            base.coefficient = pole.res;
            out.push_back(base);
        }
    }
    return out;
}

// K^(0)/K^(1) split of the r > rt kernel. H_0(0) = 1 sends borderline
// rt-exponent-zero terms into K^(0); H_1(0) = 0 keeps them out of K^(1).
// ln(r) parts belong to K^(0), ln(rt) parts to K^(1).
inline std::pair<std::vector<KernelTerm>, std::vector<KernelTerm>> kernel_split(const std::vector<KernelTerm>& terms) {
    std::vector<KernelTerm> k0, k1;
    for (const auto& t : terms) {
        if (t.region != Region::r_greater)
            throw std::invalid_argument("kernel_split: applies to the r > rt region only");
        if (t.log_rtilde) {
            k1.push_back(t);
        } else if (t.log_r) {
            k0.push_back(t);
        } else if (t.rtilde_exponent.sign() >= 0) {
            k0.push_back(t);
        } else {
            k1.push_back(t);
        }
    }
    return {std::move(k0), std::move(k1)};
}

// ---------------------------------------------------------------------------
// Fundamental-solution series.
// ---------------------------------------------------------------------------

// One contribution to k_j(r): coeff * r^{2-n+j}, optionally times ln(r).
// The projection constant p0 is kept as a separate factor on the series.
struct SeriesEntry {
    ParamPoly coeff;
    bool log_r = false;
};

struct FundamentalSolutionSeries {
    int n = 3;
    spectrum::PiScaled p0;
    std::vector<std::vector<SeriesEntry>> orders;
    std::map<std::string, Rational> default_params;
    // Order-1/2 symbol constants when they exist; drive the convergence bound.
    ParamPoly c1, c2;
    bool family_bound = false; // true when the rigorous n = 3 word-sum bound applies
};

// The rt -> 0 limit of K_j^(0): only the ell = 0 pole sitting exactly at
// w = n survives. Simple pole: -Res; double pole: +Res1 ln r - Res2.
inline std::vector<SeriesEntry> spherical_limit(SymbolTable& table, int j, const ContourSpec& contour) {
    const ConeOperator& op = table.op();
    if (!op.fundamental_solution_compatible())
        throw std::domain_error(op.name + ": not fundamental-solution compatible (a0 != -a1(n-2) - (n-2)^2)");
    if (contour.real_part(op.n) >= Rational(op.n))
        throw std::domain_error(op.name + ": contour lies right of the pole at w = n; decrease gamma");
    std::vector<SeriesEntry> entries;
    const MellinSymbol sym = *table.symbol(0, j);
    if (sym.is_zero()) return entries;
    const QuadExt dim{Rational(op.n)};
    for (const auto& pole : symbols::poles_with_residues(sym, op, 0, j, contour)) {
        if (!(pole.location == dim)) continue;
        if (pole.order == 1) {
            if (!pole.res.is_zero()) entries.push_back({-pole.res, false});
        } else {
            if (!pole.res1.is_zero()) entries.push_back({pole.res1, true});
            if (!pole.res2.is_zero()) entries.push_back({-pole.res2, false});
        }
    }
    return entries;
}

inline FundamentalSolutionSeries fundamental_solution_series(SymbolTable& table, int max_order) {
    const ConeOperator& op = table.op();
    ContourSpec contour = ops::default_contour(op);
    FundamentalSolutionSeries series;
    series.n = op.n;
    series.p0 = op.base->p0();
    series.default_params = op.parameters;
    series.orders.reserve(max_order + 1);
    for (int j = 0; j <= max_order; ++j) series.orders.push_back(spherical_limit(table, j, contour));

    const Rational lambda0 = op.base->eigenvalue(0);
    auto constant_of = [&](int i) -> std::pair<ParamPoly, bool> {
        exact::PPoly h = op.h_poly(i, lambda0);
        if (h.degree() <= 0) return {h.coeff(0), true};
        ParamPoly mag;
        return {mag, false};
    };
    auto [c1, c1_const] = constant_of(1);
    auto [c2, c2_const] = constant_of(2);
    series.c1 = c1;
    series.c2 = c2;
    series.family_bound = c1_const && c2_const && op.n == 3 && op.a1_0() == -1 && op.a0_0() == 0 &&
                          op.b_0() == -1 && op.coefficient_order() <= 2;
    return series;
}

// ---------------------------------------------------------------------------
// Series summation with a convergence bound.
// ---------------------------------------------------------------------------

struct SumResult {
    double value = 0.0;
    double tail_bound = 0.0;
    bool tail_rigorous = false;
    bool ok = true; // tail bound <= tol
};

namespace detail {

inline double fib(int q) {
    if (q < 0) return 0.0;
    double a = 1.0, b = 1.0; // F(0), F(1)
    for (int i = 2; i <= q; ++i) {
        double c = a + b;
        a = b;
        b = c;
    }
    return q == 0 ? 1.0 : b;
}

inline double harmonic_d(int p) {
    double h = 0.0;
    for (int k = 1; k <= p; ++k) h += 1.0 / k;
    return h;
}

// Majorant for |r^p k_p(r)| built from the word-sum estimate: the number of
// weight-p words is the Fibonacci number F(p), each residue product is at
// most 2/p!, and the log-term sums are bounded by H_p + H_{p-1}. For the
// n = 3 family with no first-order coefficient only the single all-2 word
// contributes and no logarithms occur.
inline double tail_term(int p, double r, double c0, double p0_abs, int n, bool pure_even) {
    if (c0 == 0.0) return 0.0;
    double rp = std::pow(r, 2 - n + p);
    double lf = 1.0;
    for (int k = 2; k <= p; ++k) lf *= k;
    double base = rp * p0_abs * std::pow(c0, p) / lf;
    if (pure_even) return p % 2 == 0 ? base : 0.0;
    double logs = std::abs(std::log(r)) + harmonic_d(p) + harmonic_d(p - 1);
    return base * (fib(p - 2) + 2.0 * fib(p - 1) * logs);
}

} // namespace detail

inline BigFloat evaluate_series_big(const FundamentalSolutionSeries& series, const BigFloat& r,
                                    const std::map<std::string, BigFloat>& params, int max_order) {
    BigFloat acc(0L);
    BigFloat lr = log(r);
    const int top = std::min<int>(max_order, static_cast<int>(series.orders.size()) - 1);
    for (int j = 0; j <= top; ++j) {
        if (series.orders[j].empty()) continue;
        BigFloat order_val(0L);
        for (const auto& e : series.orders[j]) {
            BigFloat c = e.coeff.evaluate_big(params);
            if (e.log_r) c *= lr;
            order_val += c;
        }
        acc += order_val * pow(r, BigFloat(2 - series.n + j));
    }
    return acc * series.p0.to_bigfloat();
}

inline std::map<std::string, BigFloat> series_params(const FundamentalSolutionSeries& series,
                                                     const std::map<std::string, double>& overrides) {
    std::map<std::string, BigFloat> params;
    for (const auto& [name, v] : series.default_params) params.emplace(name, BigFloat(Rational(v)));
    for (const auto& [name, v] : overrides) params.insert_or_assign(name, BigFloat(v));
    return params;
}

// Partial sum of k(r) = sum_j r^{2-n+j} k_j(r) together with a majorant bound
// on the dropped tail. The bound is rigorous for the n = 3 word-sum family;
// for other operators the family constant is replaced by the largest order-1/2
// coefficient magnitude and the result is flagged as heuristic.
inline SumResult sum_series(const FundamentalSolutionSeries& series, double r,
                            const std::map<std::string, double>& parameter_values, int max_order, double tol) {
    if (!(r > 0.0)) throw std::invalid_argument("sum_series: r must be positive");
    if (max_order < 0 || max_order >= static_cast<int>(series.orders.size()))
        throw std::invalid_argument("sum_series: max_order outside the computed series");
    auto params = series_params(series, parameter_values);

    SumResult res;
    res.value = evaluate_series_big(series, BigFloat(r), params, max_order).to_double();
    res.tail_rigorous = series.family_bound;

    double c1_abs = std::abs(series.c1.evaluate_big(params).to_double());
    double c2_abs = std::abs(series.c2.evaluate_big(params).to_double());
    double c0;
    bool pure_even = false;
    if (series.family_bound) {
        c0 = std::max(c1_abs, std::sqrt(c2_abs));
        pure_even = c1_abs == 0.0;
    } else {
        c0 = std::max(c1_abs, c2_abs);
    }
    double p0_abs = std::abs(series.p0.to_double());
    double tail = 0.0;
    if (c0 > 0.0) {
        bool bounded = false;
        double t_prev = -1.0;
        for (int p = max_order + 1; p <= max_order + 5000; ++p) {
            double t = detail::tail_term(p, r, c0, p0_abs, series.n, pure_even);
            if (t == 0.0) continue;
            tail += t;
            if (t_prev > 0.0 && t <= 0.5 * t_prev && t <= 1e-15 * tail + 1e-300) {
                // once the term ratio stays below 1/2 the remainder is below
                // the last term added
                tail += t;
                bounded = true;
                break;
            }
            t_prev = t;
        }
        if (!bounded) tail = std::numeric_limits<double>::infinity();
    }
    res.tail_bound = tail;
    res.ok = tail <= tol;
    return res;
}

// Double-precision view of a series for quadrature-grade evaluation: one
// (plain, log) coefficient pair per order, parameters already substituted.
struct CompiledSeries {
    int n = 3;
    double p0 = 0.0;
    std::vector<std::pair<double, double>> coeffs;
};

inline CompiledSeries compile_series(const FundamentalSolutionSeries& series,
                                     const std::map<std::string, double>& parameter_values = {}) {
    auto params = series_params(series, parameter_values);
    CompiledSeries out;
    out.n = series.n;
    out.p0 = series.p0.to_double();
    out.coeffs.reserve(series.orders.size());
    for (const auto& entries : series.orders) {
        double plain = 0.0, logc = 0.0;
        for (const auto& e : entries) (e.log_r ? logc : plain) += e.coeff.evaluate_big(params).to_double();
        out.coeffs.emplace_back(plain, logc);
    }
    return out;
}

inline double evaluate_compiled(const CompiledSeries& s, double r, int max_order = -1) {
    if (!(r > 0.0)) throw std::invalid_argument("evaluate_compiled: r must be positive");
    const int top = max_order < 0 ? static_cast<int>(s.coeffs.size()) - 1
                                  : std::min<int>(max_order, static_cast<int>(s.coeffs.size()) - 1);
    const double lr = std::log(r);
    double acc = 0.0;
    double rp = std::pow(r, 2 - s.n);
    for (int j = 0; j <= top; ++j) {
        const auto& [plain, logc] = s.coeffs[j];
        acc += (plain + logc * lr) * rp;
        rp *= r;
    }
    return acc * s.p0;
}

// ---------------------------------------------------------------------------
// Pointwise kernel evaluation through the generalized Laplace expansion.
// ---------------------------------------------------------------------------

class KernelAssembler {
public:
    struct CompiledTerm {
        double coeff;
        double r_exp;
        double rt_exp;
        bool log_r;
        bool log_rt;
        Region region;
    };

    explicit KernelAssembler(SymbolTable& table, ContourSpec contour)
        : table_(table), contour_(std::move(contour)) {
        contour_.validate(table.op());
    }

    const std::vector<KernelTerm>& terms(int ell, int j) {
        return *memo_.get_or_compute({ell, j}, [this, ell, j] { return kernel_terms(table_, ell, j, contour_); });
    }

    // K(r, phi | rt, phit) = sum_j r^j sum_ell K_j-terms * p_ell(angle),
    // truncated at max_ell and max_order. The diagonal r = rt is excluded.
    // Parameter overrides bypass the compiled-coefficient cache.
    double evaluate(double r, double rt, double gamma_angle, int max_ell, int max_order,
                    const std::map<std::string, double>& parameter_values = {}) {
        if (!(r > 0.0) || !(rt > 0.0)) throw std::invalid_argument("kernel_eval: radii must be positive");
        if (r == rt) throw std::invalid_argument("kernel_eval: the diagonal r = rt is excluded");
        const ConeOperator& op = table_.op();

        const Region want = r > rt ? Region::r_greater : Region::r_less;
        const double lr = std::log(r), lrt = std::log(rt);
        double acc = 0.0;
        for (int ell = 0; ell <= max_ell; ++ell) {
            double pl = op.base->projection_kernel(ell, gamma_angle);
            if (pl == 0.0) continue;
            double radial = 0.0;
            double rj = 1.0;
            for (int j = 0; j <= max_order; ++j, rj *= r) {
                const std::vector<CompiledTerm>& list =
                    parameter_values.empty() ? compiled(ell, j) : compile(ell, j, parameter_values);
                for (const auto& t : list) {
                    if (t.region != want) continue;
                    double v = t.coeff * std::pow(r, t.r_exp) * std::pow(rt, t.rt_exp);
                    if (t.log_r) v *= lr;
                    if (t.log_rt) v *= lrt;
                    radial += rj * v;
                }
            }
            acc += radial * pl;
        }
        return acc;
    }

private:
    std::vector<CompiledTerm> compile(int ell, int j, const std::map<std::string, double>& overrides) {
        const ConeOperator& op = table_.op();
        std::map<std::string, BigFloat> params;
        for (const auto& [name, v] : op.parameters) params.emplace(name, BigFloat(Rational(v)));
        for (const auto& [name, v] : overrides) params.insert_or_assign(name, BigFloat(v));
        std::vector<CompiledTerm> out;
        for (const auto& t : terms(ell, j))
            out.push_back({t.coefficient.evaluate_big(params).to_double(), t.r_exponent.to_double(),
                           t.rtilde_exponent.to_double(), t.log_r, t.log_rtilde, t.region});
        return out;
    }

    const std::vector<CompiledTerm>& compiled(int ell, int j) {
        return *compiled_memo_.get_or_compute({ell, j}, [this, ell, j] { return compile(ell, j, {}); });
    }

    SymbolTable& table_;
    ContourSpec contour_;
    OnceMap<std::pair<int, int>, std::vector<KernelTerm>> memo_;
    OnceMap<std::pair<int, int>, std::vector<CompiledTerm>> compiled_memo_;
};

} // namespace parametrix::kernel
