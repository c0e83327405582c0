#include "parametrix/spectrum.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace parametrix;
using spectrum::SphereSpectrum;
using exact::Rational;

namespace {

// Independent oracle: associated Legendre functions with Condon-Shortley
// phase, P_l^m(x), by the standard recurrences.
double assoc_legendre(int l, int m, double x) {
    double pmm = 1.0;
    if (m > 0) {
        double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

std::complex<double> sph_harmonic(int l, int m, double theta, double phi) {
    int am = std::abs(m);
    double lg = 0.0;
    for (int k = l - am + 1; k <= l + am; ++k) lg += std::log(static_cast<double>(k));
    double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) * std::exp(-lg));
    std::complex<double> y = norm * assoc_legendre(l, am, std::cos(theta)) *
                             std::exp(std::complex<double>(0.0, am * phi));
    if (m < 0) {
        y = std::conj(y);
        if (am % 2 == 1) y = -y;
    }
    return y;
}

// Brute-force projection kernel: sum over the 2l+1 harmonics.
double kernel_bruteforce(int l, double theta_a, double phi_a, double theta_b, double phi_b) {
    std::complex<double> acc = 0.0;
    for (int m = -l; m <= l; ++m)
        acc += sph_harmonic(l, m, theta_a, phi_a) * std::conj(sph_harmonic(l, m, theta_b, phi_b));
    return acc.real();
}

double separation(double ta, double pa, double tb, double pb) {
    double c = std::cos(ta) * std::cos(tb) + std::sin(ta) * std::sin(tb) * std::cos(pa - pb);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// Quadrature over S^2: composite Simpson in theta, trapezoid in phi.
template <class F>
double sphere_integral(const F& f) {
    const int nt = 600, np = 128;
    double ht = M_PI / nt;
    double acc = 0.0;
    for (int i = 0; i <= nt; ++i) {
        double theta = i * ht;
        double wt = (i == 0 || i == nt) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        double ring = 0.0;
        for (int j = 0; j < np; ++j) ring += f(theta, 2.0 * M_PI * j / np);
        acc += wt * ring * (2.0 * M_PI / np) * std::sin(theta);
    }
    return acc * ht / 3.0;
}

// dim of degree-l harmonic polynomials in n variables.
long harmonic_dim(int n, int l) {
    auto choose = [](long a, long b) -> long {
        if (b < 0 || b > a) return 0;
        long r = 1;
        for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    return choose(n + l - 1, l) - choose(n + l - 3, l - 2);
}

} // namespace

TEST_CASE("sphere eigenvalues and multiplicities") {
    SphereSpectrum s3(3);
    CHECK(s3.eigenvalue(0) == 0);
    CHECK(s3.eigenvalue(1) == 2);
    CHECK(s3.multiplicity(1) == 3);
    for (int l = 0; l <= 10; ++l) CHECK(s3.multiplicity(l) == 2 * l + 1);

    SphereSpectrum s4(4);
    CHECK(s4.eigenvalue(2) == 8);

    for (int n = 3; n <= 8; ++n) {
        SphereSpectrum s(n);
        for (int l = 0; l <= 10; ++l) {
            CAPTURE(n, l);
            CHECK(s.eigenvalue(l) == Rational(l) * Rational(l + n - 2));
            CHECK(s.multiplicity(l) == harmonic_dim(n, l));
        }
    }
    CHECK_THROWS_AS(SphereSpectrum(2), std::invalid_argument);
}

TEST_CASE("p0 equals 1/area for every built-in dimension") {
    // area(S^{n-1}) = 2 pi^{n/2} / Gamma(n/2)
    for (int n = 3; n <= 9; ++n) {
        SphereSpectrum s(n);
        double gamma_half_n = std::tgamma(n / 2.0);
        double area = 2.0 * std::pow(M_PI, n / 2.0) / gamma_half_n;
        CHECK(s.p0().to_double() == Catch::Approx(1.0 / area).epsilon(1e-14));
    }
    SphereSpectrum s3(3);
    CHECK(s3.p0().coeff == Rational(1, 4));
    CHECK(s3.p0().pi_power == -1);
    SphereSpectrum s4(4);
    CHECK(s4.p0().coeff == Rational(1, 2));
    CHECK(s4.p0().pi_power == -2);
}

TEST_CASE("projection kernel basics for n = 3") {
    SphereSpectrum s(3);
    CHECK(s.projection_kernel(0, 0.4) == Catch::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-15));
    CHECK(s.projection_kernel(1, 0.0) == Catch::Approx(3.0 / (4.0 * M_PI)).epsilon(1e-15));
    CHECK(std::abs(s.projection_kernel(1, M_PI / 2.0)) < 1e-16);
    CHECK_THROWS_AS(s.projection_kernel(-1, 0.0), std::invalid_argument);
    SphereSpectrum s5(5);
    CHECK_FALSE(s5.has_projection_kernel());
    CHECK_THROWS_AS(s5.projection_kernel(1, 0.2), std::logic_error);
}

TEST_CASE("addition theorem matches the brute-force harmonic sum") {
    SphereSpectrum s(3);
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> ut(0.05, M_PI - 0.05), up(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 20; ++trial) {
        double ta = ut(rng), pa = up(rng), tb = ut(rng), pb = up(rng);
        double gamma = separation(ta, pa, tb, pb);
        for (int l = 0; l <= 4; ++l) {
            CAPTURE(l, ta, pa, tb, pb);
            CHECK(s.projection_kernel(l, gamma) ==
                  Catch::Approx(kernel_bruteforce(l, ta, pa, tb, pb)).margin(1e-12));
        }
    }
}

TEST_CASE("reproducing property and orthogonality under quadrature") {
    SphereSpectrum s(3);
    const double beta = 0.9; // separation between the two outer points
    for (int l = 0; l <= 4; ++l) {
        double integral = sphere_integral([&](double theta, double phi) {
            double g1 = theta; // angle to the north pole
            double g2 = separation(theta, phi, beta, 0.0);
            return s.projection_kernel(l, g1) * s.projection_kernel(l, g2);
        });
        CAPTURE(l);
        CHECK(integral == Catch::Approx(s.projection_kernel(l, beta)).margin(1e-8));
    }
    for (int l = 0; l <= 3; ++l) {
        double integral = sphere_integral([&](double theta, double phi) {
            double g1 = theta;
            double g2 = separation(theta, phi, beta, 0.0);
            return s.projection_kernel(l, g1) * s.projection_kernel(l + 1, g2);
        });
        CAPTURE(l);
        CHECK(std::abs(integral) < 1e-8);
    }
    // self-separation integral gives the multiplicity
    for (int l = 0; l <= 4; ++l) {
        double integral = sphere_integral([&](double, double) { return s.projection_kernel(l, 0.0); });
        CHECK(integral == Catch::Approx(static_cast<double>(s.multiplicity(l))).epsilon(1e-9));
    }
}

TEST_CASE("custom spectra validate their invariants") {
    using spectrum::CustomSpectrum;
    using spectrum::PiScaled;
    PiScaled p0{Rational(1, 4), -1};
    CHECK_NOTHROW(CustomSpectrum(2, {{Rational(0), 1}, {Rational(2), 3}}, p0));
    CHECK_THROWS_AS(CustomSpectrum(2, {{Rational(1), 1}}, p0), std::invalid_argument);
    CHECK_THROWS_AS(CustomSpectrum(2, {{Rational(0), 1}, {Rational(3), 0}}, p0), std::invalid_argument);
    CHECK_THROWS_AS(CustomSpectrum(2, {{Rational(0), 1}, {Rational(3), 2}, {Rational(1), 2}}, p0),
                    std::invalid_argument);
    CustomSpectrum c(2, {{Rational(0), 1}, {Rational(5, 2), 2}}, p0);
    CHECK(c.eigenvalue(1) == Rational(5, 2));
    CHECK_THROWS_AS(c.eigenvalue(7), std::out_of_range);
}
