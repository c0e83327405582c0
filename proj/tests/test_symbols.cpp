#include "parametrix/symbols.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <thread>

using namespace parametrix;
using exact::Monomial;
using exact::ParamPoly;
using exact::QuadExt;
using exact::Rational;
using ops::ConeOperator;
using ops::ContourSpec;
using symbols::MellinSymbol;
using symbols::Side;
using symbols::SymbolTable;

namespace {

MellinSymbol inverse_factors(std::vector<std::pair<long, int>> roots, ParamPoly scalar = ParamPoly(1L)) {
    MellinSymbol s;
    s.scalar = std::move(scalar);
    for (auto [r, m] : roots) s.denominator.push_back({QuadExt(Rational(r)), m});
    return s;
}

ParamPoly kappa_pow(int m) { return ParamPoly(Monomial{{"kappa_sq", m}}, QuadExt(1L)); }

} // namespace

TEST_CASE("delta_w for the built-in families") {
    ConeOperator sl3 = ops::shifted_laplacian(3, Rational(1));
    CHECK(sl3.delta_w(0) == QuadExt(Rational(1, 2)));
    CHECK(sl3.delta_w(1) == QuadExt(Rational(3, 2)));
    ConeOperator sl4 = ops::shifted_laplacian(4, Rational(1));
    CHECK(sl4.delta_w(0) == QuadExt(Rational(1)));
    // sphere spectra keep Delta w rational in every dimension
    ConeOperator sl5 = ops::shifted_laplacian(5, Rational(1));
    CHECK(sl5.delta_w(2) == QuadExt(Rational(7, 2)));
}

TEST_CASE("type-A validation rejects degenerate discriminants") {
    ConeOperator op;
    op.name = "degenerate";
    op.n = 3;
    op.a1 = {ParamPoly(0L)};
    op.a0 = {ParamPoly(0L)};
    op.b = {ParamPoly(-1L)};
    op.base = spectrum::sphere_spectrum(3);
    CHECK_THROWS_AS(op.validate(), std::invalid_argument); // (a1)^2 - 4 a0 = 0
    CHECK_THROWS_AS(op.delta_w(0), std::domain_error);

    ConeOperator bad_b = ops::shifted_laplacian(3, Rational(0));
    bad_b.b = {ParamPoly(1L)};
    CHECK_THROWS_AS(bad_b.validate(), std::invalid_argument);
}

TEST_CASE("conormal inverse in factored form") {
    ConeOperator op = ops::shifted_laplacian(3, Rational(1));
    CHECK(symbols::equal(symbols::conormal_inverse(op, 0), inverse_factors({{2, 1}, {3, 1}})));
    CHECK(symbols::equal(symbols::conormal_inverse(op, 1), inverse_factors({{1, 1}, {4, 1}})));
}

TEST_CASE("symbol arithmetic reduces eagerly") {
    // (w - 3) / ((w-2)(w-3)) -> 1/(w-2)
    MellinSymbol s = inverse_factors({{2, 1}, {3, 1}});
    exact::PPoly lin(std::vector<ParamPoly>{ParamPoly(-3L), ParamPoly(1L)});
    MellinSymbol reduced = s * lin;
    CHECK(symbols::equal(reduced, inverse_factors({{2, 1}})));
    // addition over a common denominator: 1/(w-2) - 1/(w-3) = -1/((w-2)(w-3))
    MellinSymbol a = inverse_factors({{2, 1}});
    MellinSymbol b = inverse_factors({{3, 1}});
    MellinSymbol diff = a - b;
    MellinSymbol expected = inverse_factors({{2, 1}, {3, 1}}, ParamPoly(-1L));
    CHECK(symbols::equal(diff, expected));
    // shifting moves the poles
    CHECK(symbols::equal(symbols::shifted(a, Rational(-1)), inverse_factors({{3, 1}})));
}

TEST_CASE("shifted Laplacian symbols reproduce the product form") {
    ConeOperator op = ops::shifted_laplacian(3, Rational(1));
    SymbolTable table(op);

    // j = 2 at ell = 0: kappa^2 / ((w-2)(w-3)(w-4)(w-5))
    MellinSymbol expected = inverse_factors({{2, 1}, {3, 1}, {4, 1}, {5, 1}}, kappa_pow(1));
    CHECK(symbols::equal(*table.symbol(0, 2), expected));

    // odd orders vanish identically
    for (int j = 1; j <= 9; j += 2)
        for (int ell = 0; ell <= 2; ++ell) CHECK(table.symbol(ell, j)->is_zero());

    // h_{2m}^{(-1)} = kappa^{2m} prod_{j=0}^{m} h_0^{(-1)}(w - 2j) for m <= 6, ell <= 4
    for (int ell = 0; ell <= 4; ++ell) {
        for (int m = 0; m <= 6; ++m) {
            MellinSymbol prod = MellinSymbol::constant(kappa_pow(m));
            for (int j = 0; j <= m; ++j)
                prod = prod * symbols::shifted(symbols::conormal_inverse(op, ell), Rational(-2 * j));
            CAPTURE(ell, m);
            CHECK(symbols::equal(*table.symbol(ell, 2 * m), prod));
        }
    }
}

TEST_CASE("coulomb first-order symbol has the double pole") {
    ConeOperator op = ops::coulomb(Rational(1), Rational(0));
    SymbolTable table(op);
    MellinSymbol expected = inverse_factors({{2, 1}, {4, 1}}, ParamPoly(Monomial{{"Z", 1}}, QuadExt(-2L)));
    expected.denominator.insert(expected.denominator.begin() + 1, {QuadExt(Rational(3)), 2});
    CHECK(symbols::equal(*table.symbol(0, 1), expected));
}

TEST_CASE("pole classification against the default contour") {
    ConeOperator op = ops::shifted_laplacian(3, Rational(1));
    CHECK(op.default_gamma() == Rational(1));
    ContourSpec contour{Rational(1)};
    contour.validate(op);
    CHECK(contour.real_part(3) == Rational(5, 2));

    SymbolTable table(op);
    auto poles = symbols::classify_poles(*table.symbol(0, 0), op, 0, 0, contour);
    REQUIRE(poles.size() == 2);
    CHECK(poles[0].location == QuadExt(Rational(2)));
    CHECK(poles[0].side == Side::left_of_contour);
    CHECK(poles[0].order == 1);
    CHECK(poles[1].location == QuadExt(Rational(3)));
    CHECK(poles[1].side == Side::right_of_contour);
    CHECK(poles[1].order == 1);

    // n odd: no order-2 poles at any computed order
    for (int ell = 0; ell <= 3; ++ell)
        for (int j = 0; j <= 8; ++j)
            for (const auto& p : symbols::classify_poles(*table.symbol(ell, j), op, ell, j, contour))
                CHECK(p.order == 1);

    // Coulomb j = 1: the pole at 3 has order 2
    ConeOperator cop = ops::coulomb(Rational(1), Rational(0));
    SymbolTable ctable(cop);
    auto cpoles = symbols::classify_poles(*ctable.symbol(0, 1), cop, 0, 1, contour);
    bool found = false;
    for (const auto& p : cpoles)
        if (p.location == QuadExt(Rational(3))) {
            found = true;
            CHECK(p.order == 2);
            CHECK(p.side == Side::right_of_contour);
        }
    CHECK(found);
}

TEST_CASE("a pole exactly on the contour is a hard error") {
    // For the n = 4 shifted Laplacian the ell = 0 midpoint gamma = 1 puts the
    // contour at Re w = 3, where the ell = 1 order-2 symbol has a pole.
    ConeOperator op = ops::shifted_laplacian(4, Rational(1));
    SymbolTable table(op);
    ContourSpec contour{Rational(1)};
    contour.validate(op);
    CHECK_THROWS_AS(symbols::classify_poles(*table.symbol(1, 2), op, 1, 2, contour),
                    symbols::ContourViolation);
    // the narrower strip 2 - n/2 < gamma < 3 - n/2 avoids it
    ContourSpec narrow{Rational(1, 2)};
    CHECK_NOTHROW(symbols::classify_poles(*table.symbol(1, 2), op, 1, 2, narrow));
}

TEST_CASE("exact residues") {
    ConeOperator op = ops::shifted_laplacian(3, Rational(1));
    ContourSpec contour{Rational(1)};
    SymbolTable table(op);

    // 1/((w-2)(w-3)) at w = 3
    auto poles = symbols::poles_with_residues(*table.symbol(0, 0), op, 0, 0, contour);
    CHECK(poles[1].res == ParamPoly(1L));
    CHECK(poles[0].res == ParamPoly(-1L));

    // kappa^2/((w-2)(w-3)(w-4)(w-5)) at w = 3 -> kappa^2/2
    auto poles2 = symbols::poles_with_residues(*table.symbol(0, 2), op, 0, 2, contour);
    bool checked = false;
    for (const auto& p : poles2)
        if (p.location == QuadExt(Rational(3))) {
            CHECK(p.res == ParamPoly(Monomial{{"kappa_sq", 1}}, QuadExt(Rational(1, 2))));
            checked = true;
        }
    CHECK(checked);

    // Coulomb double pole at 3: Res^(1) = 2Z, Res^(2) = 0
    ConeOperator cop = ops::coulomb(Rational(1), Rational(0));
    SymbolTable ctable(cop);
    auto cpoles = symbols::poles_with_residues(*ctable.symbol(0, 1), cop, 0, 1, contour);
    for (const auto& p : cpoles)
        if (p.order == 2) {
            CHECK(p.res1 == ParamPoly(Monomial{{"Z", 1}}, QuadExt(2L)));
            CHECK(p.res2.is_zero());
        }
}

TEST_CASE("residue order mismatch is rejected") {
    ConeOperator op = ops::shifted_laplacian(3, Rational(1));
    SymbolTable table(op);
    symbols::PoleDatum fake;
    fake.location = QuadExt(Rational(3));
    fake.order = 2;
    CHECK_THROWS_AS(symbols::residue(*table.symbol(0, 0), fake), std::invalid_argument);
}

TEST_CASE("defining symbol identities hold exactly") {
    for (auto op : {ops::shifted_laplacian(3, Rational(1)), ops::shifted_laplacian(4, Rational(2)),
                    ops::coulomb(Rational(1), Rational(1, 2))}) {
        SymbolTable table(op);
        for (int ell = 0; ell <= 3; ++ell) {
            auto rep = symbols::defining_identity_check(table, ell, 8);
            CAPTURE(op.name, ell, rep.message);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("a corrupted symbol table breaks the identity") {
    // Evaluate the Coulomb identity against symbols computed for an operator
    // with a different first-order coefficient; the j = 1 equation must fail.
    ConeOperator coulomb_op = ops::coulomb(Rational(1), Rational(0));
    ConeOperator wrong = coulomb_op;
    wrong.name = "corrupted";
    wrong.a0[1] = ParamPoly(Monomial{{"Z", 1}}, QuadExt(3L));
    SymbolTable wrong_table(wrong);
    const Rational lambda = coulomb_op.base->eigenvalue(0);
    MellinSymbol acc = MellinSymbol::zero();
    for (int i = 0; i <= 1; ++i) {
        exact::PPoly hi = coulomb_op.h_poly(i, lambda);
        if (hi.is_zero()) continue;
        acc = acc + symbols::shifted(*wrong_table.symbol(0, 1 - i), Rational(2 - i)) * hi;
    }
    CHECK_FALSE(acc.is_zero());
}

TEST_CASE("memo table computes each symbol once under concurrency") {
    ConeOperator op = ops::shifted_laplacian(3, Rational(1));
    SymbolTable table(op);
    std::vector<std::thread> workers;
    for (int t = 0; t < 8; ++t)
        workers.emplace_back([&table] {
            for (int ell = 0; ell <= 2; ++ell)
                for (int j = 0; j <= 10; ++j) (void)table.symbol(ell, j);
        });
    for (auto& w : workers) w.join();
    // 3 ells x 11 orders; each (ell, j) computed exactly once
    CHECK(table.computations() == 33);
    MellinSymbol expected = inverse_factors({{2, 1}, {3, 1}, {4, 1}, {5, 1}}, kappa_pow(1));
    CHECK(symbols::equal(*table.symbol(0, 2), expected));
}
