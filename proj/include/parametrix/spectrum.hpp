#pragma once

#include "parametrix/bigfloat.hpp"
#include "parametrix/rational.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parametrix::spectrum {

using exact::Integer;
using exact::Rational;

// Exact constant of the form coeff * pi^pi_power.
struct PiScaled {
    Rational coeff{0};
    int pi_power = 0;

    double to_double() const {
        BigFloat v = BigFloat(coeff) * pow_si(BigFloat::pi(), pi_power);
        return v.to_double();
    }
    BigFloat to_bigfloat() const { return BigFloat(coeff) * pow_si(BigFloat::pi(), pi_power); }
    friend bool operator==(const PiScaled& a, const PiScaled& b) {
        return a.coeff == b.coeff && (a.pi_power == b.pi_power || a.coeff == 0);
    }
};

// Legendre polynomial P_l(x) by the three-term recurrence.
inline double legendre_p(int ell, double x) {
    if (ell < 0) throw std::invalid_argument("legendre_p: negative degree");
    double pm = 1.0, pc = x;
    if (ell == 0) return pm;
    for (int k = 1; k < ell; ++k) {
        double pn = ((2.0 * k + 1.0) * x * pc - k * pm) / (k + 1.0);
        pm = pc;
        pc = pn;
    }
    return pc;
}

// Spectral data of the operator Lambda_X on the base manifold: eigenvalues
// lambda_l (exact, nondecreasing, lambda_0 = 0), multiplicities, the constant
// projection kernel p_0 = 1/area(X), and optionally the full projection
// kernels p_l as functions of the geodesic separation.
class BaseSpectrum {
public:
    virtual ~BaseSpectrum() = default;

    virtual int base_dimension() const = 0; // n - 1
    virtual Rational eigenvalue(int ell) const = 0;
    virtual long multiplicity(int ell) const = 0;
    virtual PiScaled p0() const = 0;

    virtual bool has_projection_kernel() const { return false; }
    virtual double projection_kernel(int /*ell*/, double /*gamma_angle*/) const {
        throw std::logic_error("spectrum: projection kernel not available for this base");
    }

    virtual std::string describe() const = 0;
};

// Sphere S^{n-1} with Lambda_X = -Laplace-Beltrami, eigenvalues l(l+n-2).
// The projection kernel is built in for n = 3 only, via the Legendre addition
// theorem; eigenvalues, multiplicities and p_0 exist for every n >= 3.
class SphereSpectrum final : public BaseSpectrum {
public:
    explicit SphereSpectrum(int n) : n_(n) {
        if (n < 3) throw std::invalid_argument("sphere spectrum: n = 2 is a type-B case, need n >= 3");
    }

    int ambient_dimension() const { return n_; }
    int base_dimension() const override { return n_ - 1; }

    Rational eigenvalue(int ell) const override {
        if (ell < 0) throw std::invalid_argument("spectrum: negative mode index");
        return Rational(ell) * Rational(ell + n_ - 2);
    }

    long multiplicity(int ell) const override {
        if (ell < 0) throw std::invalid_argument("spectrum: negative mode index");
        if (ell == 0) return 1;
        // (l + n/2 - 1) prod_{j=1}^{n-3} (l + j) / ((n/2 - 1) (n-3)!),
        // evaluated exactly; the result is an integer for every n >= 3.
        Rational num = exact::make_rational(2 * ell + n_ - 2, 2);
        for (int j = 1; j <= n_ - 3; ++j) num *= Rational(ell + j);
        Rational den = exact::make_rational(n_ - 2, 2) * Rational(exact::factorial(n_ - 3));
        Rational m = num / den;
        return exact::to_long(m);
    }

    PiScaled p0() const override {
        // 1/area(S^{n-1}) = Gamma(n/2) / (2 pi^{n/2}).
        if (n_ % 2 == 0) {
            return PiScaled{Rational(exact::factorial(n_ / 2 - 1)) / 2, -n_ / 2};
        }
        Rational c = Rational(exact::double_factorial(n_ - 2)) /
                     exact::pow_rational(Rational(2), (n_ + 1) / 2);
        return PiScaled{c, -(n_ - 1) / 2};
    }

    bool has_projection_kernel() const override { return n_ == 3; }

    double projection_kernel(int ell, double gamma_angle) const override {
        if (ell < 0) throw std::invalid_argument("spectrum: negative mode index");
        if (!(gamma_angle >= 0.0 && gamma_angle <= M_PI + 1e-12))
            throw std::invalid_argument("spectrum: geodesic separation must lie in [0, pi]");
        if (n_ != 3)
            throw std::logic_error("spectrum: built-in projection kernels exist for n = 3 only");
        // Addition theorem: p_l = (2l+1)/(4 pi) P_l(cos gamma).
        return (2.0 * ell + 1.0) / (4.0 * M_PI) * legendre_p(ell, std::cos(gamma_angle));
    }

    std::string describe() const override { return "sphere S^" + std::to_string(n_ - 1); }

private:
    int n_;
};

// Extension point: user-supplied spectra given as exact (eigenvalue,
// multiplicity) pairs plus the p_0 constant. No projection kernels.
class CustomSpectrum final : public BaseSpectrum {
public:
    CustomSpectrum(int base_dim, std::vector<std::pair<Rational, long>> modes, PiScaled p0, std::string name = "custom")
        : dim_(base_dim), modes_(std::move(modes)), p0_(p0), name_(std::move(name)) {
        if (modes_.empty()) throw std::invalid_argument("custom spectrum: no modes");
        if (modes_.front().first != 0)
            throw std::invalid_argument("custom spectrum: lowest eigenvalue must be 0 (constant eigenfunction)");
        for (size_t i = 0; i + 1 < modes_.size(); ++i)
            if (modes_[i].first > modes_[i + 1].first)
                throw std::invalid_argument("custom spectrum: eigenvalues must be nondecreasing");
        for (const auto& [lam, mult] : modes_)
            if (mult < 1) throw std::invalid_argument("custom spectrum: multiplicities must be >= 1");
    }

    int base_dimension() const override { return dim_; }
    Rational eigenvalue(int ell) const override { return modes_.at(checked(ell)).first; }
    long multiplicity(int ell) const override { return modes_.at(checked(ell)).second; }
    PiScaled p0() const override { return p0_; }
    std::string describe() const override { return name_; }
    int mode_count() const { return static_cast<int>(modes_.size()); }

private:
    size_t checked(int ell) const {
        if (ell < 0 || ell >= static_cast<int>(modes_.size()))
            throw std::out_of_range("custom spectrum: mode index out of range");
        return static_cast<size_t>(ell);
    }
    int dim_;
    std::vector<std::pair<Rational, long>> modes_;
    PiScaled p0_;
    std::string name_;
};

inline std::shared_ptr<const SphereSpectrum> sphere_spectrum(int n) {
    return std::make_shared<SphereSpectrum>(n);
}

} // namespace parametrix::spectrum
