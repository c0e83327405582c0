#pragma once

#include "parametrix/kernel.hpp"
#include "parametrix/symbols.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace parametrix::verify {

using exact::QuadExt;
using exact::Rational;
using ops::ConeOperator;
using symbols::MellinSymbol;

// ---------------------------------------------------------------------------
// Numeric contour integration around symbol poles.
// ---------------------------------------------------------------------------

struct ContourResidues {
    int order = 1;
    std::complex<double> res;        // order 1
    std::complex<double> res1, res2; // order 2
    double error_estimate = 0.0;
};

// Integrates the symbol over a circle of radius half the exact distance to
// the nearest other pole, composite trapezoid with `nodes` points. For an
// order-2 pole, res1 comes from the (w - w0)-weighted integral and res2 from
// the plain one.
inline ContourResidues contour_residue_oracle(const MellinSymbol& sym, const QuadExt& pole, int order,
                                              const std::map<std::string, Rational>& parameter_values,
                                              int nodes = 4096) {
    if (order != 1 && order != 2) throw std::invalid_argument("contour oracle: order must be 1 or 2");
    if (nodes < 16) throw std::invalid_argument("contour oracle: too few nodes");
    bool present = false;
    QuadExt min_dist;
    bool have_dist = false;
    for (const auto& [root, mult] : sym.denominator) {
        if (root == pole) {
            present = true;
            if (mult != order) throw std::invalid_argument("contour oracle: pole order mismatch");
            continue;
        }
        QuadExt d = root - pole;
        if (d.sign() < 0) d = -d;
        if (d.sign() == 0) throw std::invalid_argument("contour oracle: zero pole spacing (unreduced symbol)");
        if (!have_dist || compare(d, min_dist) < 0) {
            min_dist = d;
            have_dist = true;
        }
    }
    if (!present) throw std::invalid_argument("contour oracle: pole does not belong to the symbol");

    std::map<std::string, BigFloat> params;
    for (const auto& [name, v] : parameter_values) params.emplace(name, BigFloat(v));

    const BigFloat rho = have_dist ? min_dist.to_bigfloat() / BigFloat(2L) : BigFloat(exact::make_rational(1, 2));
    const BigFloat w0 = pole.to_bigfloat();
    const BigFloat two_pi = BigFloat(2L) * BigFloat::pi();

    auto integrate = [&](int N) {
        // (1/2 pi i) contour integral of f and of (w - w0) f
        BigComplex acc0{BigFloat(0L), BigFloat(0L)};
        BigComplex acc1{BigFloat(0L), BigFloat(0L)};
        for (int k = 0; k < N; ++k) {
            BigFloat theta = two_pi * BigFloat(static_cast<long>(k)) / BigFloat(static_cast<long>(N));
            BigComplex e{cos(theta), sin(theta)};
            BigComplex offset{rho * cos(theta), rho * sin(theta)};
            BigComplex w{w0 + offset.re, offset.im};
            BigComplex f = symbols::eval_complex(sym, w, params);
            acc0 = acc0 + f * e;
            acc1 = acc1 + f * offset * e;
        }
        BigFloat scale0 = rho / BigFloat(static_cast<long>(N));
        acc0 = acc0 * BigComplex{scale0, BigFloat(0L)};
        acc1 = acc1 * BigComplex{scale0, BigFloat(0L)};
        return std::pair<BigComplex, BigComplex>{acc0, acc1};
    };

    auto [full0, full1] = integrate(nodes);
    auto [half0, half1] = integrate(nodes / 2);

    ContourResidues out;
    out.order = order;
    auto to_cd = [](const BigComplex& z) { return std::complex<double>(z.re.to_double(), z.im.to_double()); };
    if (order == 1) {
        out.res = to_cd(full0);
        out.error_estimate = std::abs(out.res - to_cd(half0));
    } else {
        out.res1 = to_cd(full1);
        out.res2 = to_cd(full0);
        out.error_estimate = std::max(std::abs(out.res1 - to_cd(half1)), std::abs(out.res2 - to_cd(half0)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smooth compactly supported radial test functions with analytic derivatives.
// ---------------------------------------------------------------------------

struct RadialTestFunction {
    double support_radius = 1.0;
    double value_at_zero = 1.0;
    std::function<double(double)> value;
    std::function<double(double)> d1; // dw/dr
    std::function<double(double)> d2; // d^2 w / dr^2
};

// w0(r) = exp(1 - 1/(1 - (r/R)^2)) on [0, R), normalized to w0(0) = 1.
inline RadialTestFunction bump(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("bump: support radius must be positive");
    RadialTestFunction t;
    t.support_radius = R;
    t.value_at_zero = 1.0;
    auto core = [R](double r) -> std::array<double, 3> {
        double u = r / R;
        double s = 1.0 - u * u;
        if (!(s > 1e-14)) return {0.0, 0.0, 0.0};
        double f = 1.0 - 1.0 / s;
        double w = std::exp(f);
        double fp = -2.0 * u / (R * s * s);
        double fpp = -2.0 / (R * R * s * s) - 8.0 * u * u / (R * R * s * s * s);
        return {w, fp * w, (fpp + fp * fp) * w};
    };
    t.value = [core](double r) { return core(r)[0]; };
    t.d1 = [core](double r) { return core(r)[1]; };
    t.d2 = [core](double r) { return core(r)[2]; };
    return t;
}

// (1 + c1 r + c2 r^2) times the bump; still smooth, still w(0) = 1.
inline RadialTestFunction poly_bump(double R, double c1, double c2) {
    RadialTestFunction b = bump(R);
    RadialTestFunction t;
    t.support_radius = R;
    t.value_at_zero = 1.0;
    t.value = [b, c1, c2](double r) { return (1.0 + c1 * r + c2 * r * r) * b.value(r); };
    t.d1 = [b, c1, c2](double r) {
        return (c1 + 2.0 * c2 * r) * b.value(r) + (1.0 + c1 * r + c2 * r * r) * b.d1(r);
    };
    t.d2 = [b, c1, c2](double r) {
        return 2.0 * c2 * b.value(r) + 2.0 * (c1 + 2.0 * c2 * r) * b.d1(r) +
               (1.0 + c1 * r + c2 * r * r) * b.d2(r);
    };
    return t;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature (G7, K15).
// ---------------------------------------------------------------------------

namespace detail {

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

inline const double gk_nodes[15] = {
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691, -0.7415311855993945,
    -0.5860872354676911, -0.4058451513773972, -0.2077849550078985, 0.0,
    0.2077849550078985,  0.4058451513773972,  0.5860872354676911,  0.7415311855993945,
    0.8648644233597691,  0.9491079123427585,  0.9914553711208126};
inline const double gk_weights[15] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278,
    0.2044329400752989, 0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299786, 0.0229353220105292};
inline const double g7_weights[7] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        double v = f(mid + half * gk_nodes[i]);
        k += gk_weights[i] * v;
        if (i % 2 == 1) g += g7_weights[i / 2] * v;
    }
    return {k * half, std::abs(k - g) * half};
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, int depth, long& evals) {
    evals += 15;
    if (evals > 2'000'000) throw QuadratureFailure("quadrature: evaluation budget exceeded");
    auto [value, err] = gk15(f, a, b);
    if (err <= tol || b - a < 1e-14) {
        if (depth <= 0 && err > tol) throw QuadratureFailure("quadrature: failed to converge below tolerance");
        return value;
    }
    if (depth <= 0) throw QuadratureFailure("quadrature: failed to converge below tolerance");
    double mid = 0.5 * (a + b);
    return adaptive(f, a, mid, 0.5 * tol, depth - 1, evals) + adaptive(f, mid, b, 0.5 * tol, depth - 1, evals);
}

} // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    long evals = 0;
    // split the left end: the integrand is bounded near 0 but has log-type
    // wiggles there
    if (a == 0.0 && b > 0.0) {
        double cut = std::min(b / 8.0, 0.125);
        return detail::adaptive(f, a, cut, tol * 0.25, 48, evals) + detail::adaptive(f, cut, b, tol * 0.75, 48, evals);
    }
    return detail::adaptive(f, a, b, tol, 48, evals);
}

// ---------------------------------------------------------------------------
// Distributional pairing <A Pf. k, w> in the radial reduction.
// ---------------------------------------------------------------------------

// Computes (1/p0) * int_0^R r^{n-3} [ ((n-2) + r d/dr)^2 w
//   + a1 ((n-2) + r d/dr) w + a0(r) w ] k(r) dr.
// The result equals w(0) when Pf. k is a fundamental solution. Coefficients
// a2, a1 and b must be r-independent; a0(r) may be polynomial.
inline double distributional_pairing(const ConeOperator& op, const std::function<double(double)>& fs,
                                     const RadialTestFunction& test, double quad_tol = 1e-8) {
    auto constant_only = [&](const std::vector<exact::ParamPoly>& series, const char* which) {
        for (size_t i = 1; i < series.size(); ++i)
            if (!series[i].is_zero())
                throw std::invalid_argument(std::string("pairing: r-dependent coefficient ") + which +
                                            " is not supported");
    };
    constant_only(op.a2, "a2");
    constant_only(op.a1, "a1");

    std::vector<double> a0_coeffs;
    {
        std::map<std::string, BigFloat> params;
        for (const auto& [name, v] : op.parameters) params.emplace(name, BigFloat(Rational(v)));
        for (const auto& c : op.a0) a0_coeffs.push_back(c.evaluate_big(params).to_double());
    }
    const double a1 = BigFloat(op.a1_0()).to_double();
    const double nm2 = op.n - 2;
    const double p0 = op.base->p0().to_double();

    auto integrand = [&](double r) {
        if (r <= 0.0) return 0.0;
        double w = test.value(r);
        double w1 = test.d1(r);
        double w2 = test.d2(r);
        double rdw = r * w1;
        double rd2w = r * w1 + r * r * w2; // (r d/dr)^2 w
        double a0r = 0.0;
        double rp = 1.0;
        for (double c : a0_coeffs) {
            a0r += c * rp;
            rp *= r;
        }
        double bracket = (nm2 * nm2 + a0r) * w + (2.0 * nm2 + a1) * rdw + rd2w + a1 * nm2 * w;
        return std::pow(r, op.n - 3) * bracket * fs(r) / p0;
    };
    return integrate(integrand, 0.0, test.support_radius, quad_tol);
}

// ---------------------------------------------------------------------------
// Finite-difference annihilation check in log-radial coordinates.
// ---------------------------------------------------------------------------

struct AnnihilationReport {
    double max_residual = 0.0;
    double step_error_estimate = 0.0;
};

// Applies r^2 * (operator at eigenvalue lambda_l) to f through 5-point central
// differences in t = ln r:
//   residual(r) = a2(r) f'' - a1(r) f' + a0(r) f + b(r) lambda_l f.
// The step error is estimated by comparing against half the step; if the
// estimate exceeds `step_tol` the step is reported as too large.
inline AnnihilationReport annihilation_check(const ConeOperator& op,
                                             const std::function<BigFloat(const BigFloat&)>& f, int ell,
                                             const std::vector<double>& r_grid, double h,
                                             double step_tol = 1e-8) {
    if (!(h > 0.0)) throw std::invalid_argument("annihilation_check: step must be positive");
    std::map<std::string, BigFloat> params;
    for (const auto& [name, v] : op.parameters) params.emplace(name, BigFloat(Rational(v)));
    const BigFloat lambda{Rational(op.base->eigenvalue(ell))};

    auto series_at = [&](const std::vector<exact::ParamPoly>& series, const BigFloat& r) {
        BigFloat acc(0L);
        BigFloat rp(1L);
        for (const auto& c : series) {
            acc += c.evaluate_big(params) * rp;
            rp *= r;
        }
        return acc;
    };

    auto residual_at = [&](double r, double step) {
        BigFloat br(r);
        BigFloat bh(step);
        BigFloat t = log(br);
        auto feval = [&](int k) { return f(exp(t + BigFloat(static_cast<long>(k)) * bh)); };
        BigFloat fm2 = feval(-2), fm1 = feval(-1), f0 = feval(0), fp1 = feval(1), fp2 = feval(2);
        BigFloat d1 = (-fp2 + BigFloat(8L) * fp1 - BigFloat(8L) * fm1 + fm2) / (BigFloat(12L) * bh);
        BigFloat d2 = (-fp2 + BigFloat(16L) * fp1 - BigFloat(30L) * f0 + BigFloat(16L) * fm1 - fm2) /
                      (BigFloat(12L) * bh * bh);
        BigFloat res = series_at(op.a2, br) * d2 - series_at(op.a1, br) * d1 + series_at(op.a0, br) * f0 +
                       series_at(op.b, br) * lambda * f0;
        return res.to_double();
    };

    AnnihilationReport rep;
    for (double r : r_grid) {
        if (!(r > 0.0)) throw std::invalid_argument("annihilation_check: grid radii must be positive");
        double res_h = residual_at(r, h);
        double res_h2 = residual_at(r, h / 2.0);
        rep.max_residual = std::max(rep.max_residual, std::abs(res_h));
        rep.step_error_estimate = std::max(rep.step_error_estimate, std::abs(res_h - res_h2));
    }
    if (rep.step_error_estimate > step_tol)
        throw std::runtime_error("annihilation_check: step too large for the requested tolerance");
    return rep;
}

} // namespace parametrix::verify
