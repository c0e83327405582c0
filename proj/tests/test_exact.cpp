#include "parametrix/parampoly.hpp"
#include "parametrix/poly.hpp"
#include "parametrix/quadext.hpp"
#include "parametrix/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace parametrix::exact;

namespace {

Rational Q(long num, long den = 1) { return make_rational(num, den); }

// Small random rationals with a fixed seed; the same generator drives all
// property tests in this file.
struct RationalGen {
    std::mt19937 rng{20240917u};
    Rational operator()() {
        std::uniform_int_distribution<long> num(-30, 30);
        std::uniform_int_distribution<long> den(1, 12);
        return make_rational(num(rng), den(rng));
    }
};

} // namespace

TEST_CASE("quad_normalize folds perfect squares") {
    QuadExt a = quad_normalize(Q(0), Q(1), Q(9, 4));
    CHECK(a.rat_part() == Q(3, 2));
    CHECK(a.surd_part() == 0);

    QuadExt b = quad_normalize(Q(1, 2), Q(1), Q(2));
    CHECK(b.rat_part() == Q(1, 2));
    CHECK(b.surd_part() == Q(1));
    CHECK(b.discriminant() == Q(2));

    QuadExt c = quad_normalize(Q(0), Q(2), Q(1, 4));
    CHECK(c.rat_part() == Q(1));
    CHECK(c.surd_part() == 0);
}

TEST_CASE("quad_normalize extracts square factors and is idempotent") {
    QuadExt a = quad_normalize(Q(0), Q(1), Q(8)); // 2 sqrt(2)
    CHECK(a.surd_part() == Q(2));
    CHECK(a.discriminant() == Q(2));

    QuadExt b = quad_normalize(Q(0), Q(1), Q(1, 2)); // sqrt(2)/2
    CHECK(b.surd_part() == Q(1, 2));
    CHECK(b.discriminant() == Q(2));

    QuadExt again = quad_normalize(a.rat_part(), a.surd_part(), a.discriminant());
    CHECK(again == a);
}

TEST_CASE("negative discriminants are rejected") {
    CHECK_THROWS_AS(quad_normalize(Q(0), Q(1), Q(-1)), std::domain_error);
}

TEST_CASE("mixing distinct extensions is rejected") {
    QuadExt r2 = quad_sqrt(Q(2));
    QuadExt r3 = quad_sqrt(Q(3));
    CHECK_THROWS_AS(r2 + r3, IncompatibleExtension);
    CHECK_NOTHROW(r2 + QuadExt(Q(5)));
    // sqrt(8) lives in the same extension as sqrt(2)
    CHECK(quad_sqrt(Q(8)) + r2 == quad_sqrt(Q(2)) * QuadExt(Q(3)));
}

TEST_CASE("exact sign and comparison") {
    QuadExt v = QuadExt(Q(-3)) + quad_sqrt(Q(2)) * QuadExt(Q(2)); // 2 sqrt(2) - 3 < 0
    CHECK(v.sign() < 0);
    QuadExt w = QuadExt(Q(-1)) + quad_sqrt(Q(2)); // sqrt(2) - 1 > 0
    CHECK(w.sign() > 0);
    CHECK(compare(v, w) < 0);
    CHECK(QuadExt(Q(0)).sign() == 0);
}

TEST_CASE("field axioms on random elements of one extension") {
    RationalGen gen;
    const Rational d(7);
    for (int trial = 0; trial < 200; ++trial) {
        QuadExt x(gen(), gen(), d);
        QuadExt y(gen(), gen(), d);
        QuadExt z(gen(), gen(), d);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + (-x) == QuadExt(Q(0)));
        if (!x.is_zero()) CHECK(x * x.inverse() == QuadExt(Q(1)));
    }
}

TEST_CASE("rendering round-trips exactly") {
    RationalGen gen;
    for (int trial = 0; trial < 100; ++trial) {
        QuadExt x(gen(), gen(), Q(5));
        CHECK(QuadExt::parse(x.str()) == x);
    }
    CHECK(QuadExt::parse("3/2") == QuadExt(Q(3, 2)));
    CHECK(QuadExt::parse("1/2 + -1/3*sqrt(5)") == QuadExt(Q(1, 2), Q(-1, 3), Q(5)));
}

TEST_CASE("poly_eval matches direct substitution") {
    // w^2 - 5w + 6
    QPoly p(std::vector<QuadExt>{QuadExt(Q(6)), QuadExt(Q(-5)), QuadExt(Q(1))});
    CHECK(poly_eval(p, QuadExt(Q(3))) == QuadExt(Q(0)));
    CHECK(poly_eval(p, QuadExt(Q(0))) == QuadExt(Q(6)));
    // w - 2 at 2 + sqrt(2)
    QPoly q(std::vector<QuadExt>{QuadExt(Q(-2)), QuadExt(Q(1))});
    CHECK(poly_eval(q, QuadExt(Q(2), Q(1), Q(2))) == quad_sqrt(Q(2)));
}

TEST_CASE("poly_divide_root performs exact synthetic division") {
    QPoly p(std::vector<QuadExt>{QuadExt(Q(6)), QuadExt(Q(-5)), QuadExt(Q(1))});
    QPoly q = poly_divide_root(p, QuadExt(Q(2)));
    CHECK(q == QPoly(std::vector<QuadExt>{QuadExt(Q(-3)), QuadExt(Q(1))}));

    QPoly w2m2(std::vector<QuadExt>{QuadExt(Q(-2)), QuadExt(Q(0)), QuadExt(Q(1))});
    QPoly lin = poly_divide_root(w2m2, quad_sqrt(Q(2)));
    CHECK(lin == QPoly(std::vector<QuadExt>{quad_sqrt(Q(2)), QuadExt(Q(1))}));

    QPoly wm3(std::vector<QuadExt>{QuadExt(Q(-3)), QuadExt(Q(1))});
    CHECK_THROWS_AS(poly_divide_root(wm3, QuadExt(Q(2))), std::domain_error);
}

TEST_CASE("divide then multiply reproduces the polynomial") {
    RationalGen gen;
    for (int trial = 0; trial < 50; ++trial) {
        QuadExt root(gen(), gen(), Q(3));
        std::vector<QuadExt> coeffs;
        for (int i = 0; i < 4; ++i) coeffs.emplace_back(gen(), gen(), Q(3));
        coeffs.push_back(QuadExt(Q(1)));
        QPoly base(coeffs);
        QPoly lin(std::vector<QuadExt>{-root, QuadExt(Q(1))});
        QPoly p = base * lin;
        CHECK(poly_divide_root(p, root) == base);
    }
}

TEST_CASE("taylor shift and derivative") {
    // p(w) = w^2, p(w + 1) = w^2 + 2w + 1
    QPoly p(std::vector<QuadExt>{QuadExt(Q(0)), QuadExt(Q(0)), QuadExt(Q(1))});
    QPoly s = p.shifted(QuadExt(Q(1)));
    CHECK(s == QPoly(std::vector<QuadExt>{QuadExt(Q(1)), QuadExt(Q(2)), QuadExt(Q(1))}));
    CHECK(p.derivative() == QPoly(std::vector<QuadExt>{QuadExt(Q(0)), QuadExt(Q(2))}));
}

TEST_CASE("parameter polynomials multiply monomials and evaluate exactly") {
    ParamPoly z = ParamPoly::parameter("Z");
    ParamPoly k = ParamPoly::parameter("kappa_sq");
    ParamPoly expr = z * z * QuadExt(Q(4)) + k * QuadExt(Q(-2));
    std::map<std::string, Rational> vals{{"Z", Q(3)}, {"kappa_sq", Q(1, 2)}};
    CHECK(expr.evaluate(vals) == QuadExt(Q(35)));
    CHECK((z * k - k * z).is_zero());
    CHECK_THROWS_AS(expr.evaluate({{"Z", Q(1)}}), std::invalid_argument);
}

TEST_CASE("harmonic numbers and double factorials are exact") {
    CHECK(harmonic(3) == Q(11, 6));
    CHECK(harmonic(2) == Q(3, 2));
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(5) == 15);
    CHECK(binomial(5, 2) == 10);
}
