#pragma once

#include "parametrix/special.hpp"
#include "parametrix/spectrum.hpp"

#include <algorithm>
#include <stdexcept>

namespace parametrix::reference {

using exact::Rational;
using special::SpecialFunctionTable;

// Kernel of the asymptotic parametrix of the shifted Laplacian in R^3,
// summed in closed Bessel form:
//   r > rt:  (pi/2) sum_l (-1)^l [ I_{l+1/2}(kr)/sqrt(r) I_{-l-1/2}(krt)/sqrt(rt)
//                                 - I_{-l-1/2}(kr)/sqrt(r) I_{l+1/2}(krt)/sqrt(rt) ] p_l
//            - sqrt(pi k/2) sum_l I_{l+1/2}(kr)/sqrt(r) S_l(k rt) p_l
//   r < rt:  - sqrt(pi k/2) sum_l I_{l+1/2}(kr)/sqrt(r) S_l(k rt) p_l
inline double parametrix_kernel_n3(double kappa, double r, double rt, double gamma_angle, int max_ell,
                                   SpecialFunctionTable& table = special::default_table()) {
    if (!(r > 0.0) || !(rt > 0.0)) throw std::domain_error("parametrix_kernel_n3: radii must be positive");
    if (r == rt) throw std::domain_error("parametrix_kernel_n3: the diagonal r = rt is excluded");
    if (!(kappa > 0.0)) throw std::domain_error("parametrix_kernel_n3: kappa must be positive");
    spectrum::SphereSpectrum sphere(3);
    const BigFloat br(r), brt(rt), bk(kappa);
    const BigFloat kr = bk * br, krt = bk * brt;
    const BigFloat sq_r = sqrt(br), sq_rt = sqrt(brt);
    const BigFloat half_pi = BigFloat::pi() / BigFloat(2L);
    const BigFloat s_factor = sqrt(half_pi * bk);
    BigFloat acc(0L);
    for (int ell = 0; ell <= max_ell; ++ell) {
        double pl = sphere.projection_kernel(ell, gamma_angle);
        if (pl == 0.0) continue;
        Rational nu{2 * ell + 1, 2};
        BigFloat term(0L);
        BigFloat ip_r = special::bessel_I(nu, kr, table) / sq_r;
        if (r > rt) {
            BigFloat im_rt = special::bessel_I(-nu, krt, table) / sq_rt;
            BigFloat im_r = special::bessel_I(-nu, kr, table) / sq_r;
            BigFloat ip_rt = special::bessel_I(nu, krt, table) / sq_rt;
            BigFloat osc = half_pi * (ip_r * im_rt - im_r * ip_rt);
            term += ell % 2 == 0 ? osc : -osc;
        }
        term -= s_factor * ip_r * special::s_ell(ell, krt);
        acc += term * BigFloat(pl);
    }
    return acc.to_double();
}

// Gegenbauer expansion of the canonical Green's function of Delta_3 - kappa^2:
//   G_kappa = - sum_l K_{l+1/2}(k r_>) I_{l+1/2}(k r_<) / sqrt(r rt) p_l.
inline double green_kernel_n3(double kappa, double r, double rt, double gamma_angle, int max_ell,
                              SpecialFunctionTable& table = special::default_table()) {
    if (!(r > 0.0) || !(rt > 0.0)) throw std::domain_error("green_kernel_n3: radii must be positive");
    if (r == rt) throw std::domain_error("green_kernel_n3: the diagonal r = rt is excluded");
    if (!(kappa > 0.0)) throw std::domain_error("green_kernel_n3: kappa must be positive");
    spectrum::SphereSpectrum sphere(3);
    const double rgt = std::max(r, rt), rls = std::min(r, rt);
    const BigFloat k_rgt = BigFloat(kappa) * BigFloat(rgt), k_rls = BigFloat(kappa) * BigFloat(rls);
    const BigFloat norm = sqrt(BigFloat(r) * BigFloat(rt));
    BigFloat acc(0L);
    for (int ell = 0; ell <= max_ell; ++ell) {
        double pl = sphere.projection_kernel(ell, gamma_angle);
        if (pl == 0.0) continue;
        BigFloat radial = special::bessel_K_half(ell, k_rgt, table) *
                          special::bessel_I(exact::make_rational(2 * ell + 1, 2), k_rls, table) / norm;
        acc -= radial * BigFloat(pl);
    }
    return acc.to_double();
}

// Standard fundamental solution of the shifted Laplacian in R^n:
//   -(2 pi)^{-n/2} kappa^{(n-2)/2} r^{(2-n)/2} K_{(n-2)/2}(kappa r).
inline double standard_fs(int n, double kappa, double r, SpecialFunctionTable& table = special::default_table()) {
    if (n < 3) throw std::domain_error("standard_fs: n must be >= 3");
    if (!(kappa > 0.0) || !(r > 0.0)) throw std::domain_error("standard_fs: kappa and r must be positive");
    BigFloat bk(kappa), br(r);
    BigFloat value = special::bessel_K_order_half_n(n, bk * br, table);
    BigFloat two_pi = BigFloat(2L) * BigFloat::pi();
    BigFloat half(0.5);
    value *= pow(bk, BigFloat(n - 2) * half);
    value *= pow(br, BigFloat(2 - n) * half);
    value *= pow(two_pi, BigFloat(-n) * half);
    return (-value).to_double();
}

// Modified fundamental solution for even n: the canonical one with the
// ln(kappa/2) multiple of the smooth kernel element and a free alpha-multiple
// of the entire series removed, leaving ln(r) in place of ln(kappa r / 2).
inline double modified_fs_even(int n, double kappa, double r, double alpha,
                               SpecialFunctionTable& table = special::default_table()) {
    if (n < 4 || n % 2 != 0) throw std::domain_error("modified_fs_even: n must be even and >= 4");
    if (!(kappa > 0.0) || !(r > 0.0)) throw std::domain_error("modified_fs_even: kappa and r must be positive");
    const long half_n = n / 2;
    BigFloat bk(kappa), br(r), kr = bk * br;
    BigFloat q = kr * kr;

    // singular polynomial part: -(1/(4 pi^{n/2})) r^{2-n} sum_{k<=(n-4)/2} (-1)^k ((n-4)/2-k)!/(4^k k!) (kr)^{2k}
    BigFloat sing(0L);
    BigFloat qk(1L);
    for (long k = 0; k <= (n - 4) / 2; ++k) {
        Rational c = Rational(exact::factorial((n - 4) / 2 - k)) /
                     (exact::pow_rational(Rational(4), k) * Rational(exact::factorial(k)));
        BigFloat t = BigFloat(c) * qk;
        sing += k % 2 == 0 ? t : -t;
        qk *= q;
    }
    BigFloat total = -sing * pow_si(br, 2 - n) / (BigFloat(4L) * pow_si(BigFloat::pi(), half_n));

    // logarithmic part: (-1)^{(n-2)/2} (2 pi)^{-n/2} kappa^{(n-2)/2} r^{(2-n)/2} I_{(n-2)/2}(kr) ln r
    BigFloat log_part = special::bessel_I(Rational(half_n - 1), kr, table) * log(br);
    log_part *= pow_si(bk, half_n - 1) * pow_si(br, 1 - half_n) /
                pow_si(BigFloat(2L) * BigFloat::pi(), half_n);
    total += (half_n - 1) % 2 == 0 ? log_part : -log_part;

    // smooth series: (-1)^{n/2} kappa^{n-2} (4 pi)^{-n/2}
    //   sum_k ( -alpha + H_k + H_{(n-2)/2+k} ) (kr)^{2k} / (4^k k! ((n-2)/2+k)!)
    BigFloat smooth(0L);
    {
        BigFloat term_q(1L);
        BigFloat cutoff = pow_si(BigFloat(10L), -(BigFloat::default_prec() / 3) - 8);
        BigFloat peak(0L);
        for (int k = 0; k < table.max_series_terms; ++k) {
            Rational c = Rational(1) / (exact::pow_rational(Rational(4), k) * Rational(exact::factorial(k)) *
                                        Rational(exact::factorial(half_n - 1 + k)));
            BigFloat coeff = BigFloat(table.harmonic(k)) + BigFloat(table.harmonic(half_n - 1 + k)) -
                             BigFloat(alpha);
            BigFloat term = BigFloat(c) * coeff * term_q;
            smooth += term;
            BigFloat mag = abs(term);
            if (mag > peak) peak = mag;
            if (k > 4 && mag < cutoff * (peak + BigFloat(1L)) && q < BigFloat(static_cast<long>(k) * k)) break;
            term_q *= q;
        }
    }
    smooth *= pow_si(bk, n - 2) / pow_si(BigFloat(4L) * BigFloat::pi(), half_n);
    total += half_n % 2 == 0 ? smooth : -smooth;
    return total.to_double();
}

// Closed form of the Coulomb fundamental solution at kappa = 0:
//   -(1/(4 pi r)) [ 1 - 2 Z r ln r
//     + sum_{p>=2} (-1)^p 2^p Z^p / (p!(p-1)!) r^p ( ln r - (H_p + H_{p-1} - 1) ) ].
inline double coulomb_closed(double Z, double r, int max_p, SpecialFunctionTable& table = special::default_table()) {
    if (!(r > 0.0)) throw std::domain_error("coulomb_closed: r must be positive");
    BigFloat br(r), bz(Z);
    BigFloat lr = log(br);
    BigFloat bracket = BigFloat(1L) - BigFloat(2L) * bz * br * lr;
    BigFloat zr_p = (BigFloat(-2L) * bz * br) * (BigFloat(-2L) * bz * br); // (-2 Z r)^p at p = 2
    for (int p = 2; p <= max_p; ++p) {
        Rational c = Rational(1) / (Rational(exact::factorial(p)) * Rational(exact::factorial(p - 1)));
        BigFloat constant = BigFloat(table.harmonic(p)) + BigFloat(table.harmonic(p - 1)) - BigFloat(1L);
        bracket += BigFloat(c) * zr_p * (lr - constant);
        zr_p *= BigFloat(-2L) * bz * br;
    }
    BigFloat total = -bracket / (BigFloat(4L) * BigFloat::pi() * br);
    return total.to_double();
}

} // namespace parametrix::reference
