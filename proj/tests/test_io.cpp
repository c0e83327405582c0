#include "parametrix/io.hpp"
#include "parametrix/words.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

using namespace parametrix;
using exact::Monomial;
using exact::ParamPoly;
using exact::QuadExt;
using exact::Rational;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("/tmp/parametrix_spec_") + std::to_string(reinterpret_cast<uintptr_t>(this)) + ".json";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("coefficient strings parse to exact tagged monomials") {
    CHECK(io::parse_coefficient("3/4") == ParamPoly(QuadExt(exact::make_rational(3, 4))));
    CHECK(io::parse_coefficient("2*Z") == ParamPoly(Monomial{{"Z", 1}}, QuadExt(2L)));
    CHECK(io::parse_coefficient("-2*kappa_sq") == ParamPoly(Monomial{{"kappa_sq", 1}}, QuadExt(-2L)));
    CHECK(io::parse_coefficient("1/2*kappa_sq^2*Z") ==
          ParamPoly(Monomial{{"kappa_sq", 2}, {"Z", 1}}, QuadExt(exact::make_rational(1, 2))));
    CHECK_THROWS_AS(io::parse_coefficient("x*Z"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_coefficient(""), io::SpecError);
}

TEST_CASE("symbol JSON round-trips exactly") {
    ops::ConeOperator op = ops::coulomb(Rational(1), exact::make_rational(1, 2));
    symbols::SymbolTable table(op);
    for (int ell = 0; ell <= 2; ++ell)
        for (int j = 0; j <= 4; ++j) {
            const auto& sym = *table.symbol(ell, j);
            io::json dumped = io::symbol_to_json(sym);
            symbols::MellinSymbol back = io::symbol_from_json(dumped);
            CAPTURE(ell, j);
            CHECK(symbols::equal(sym, back));
            // determinism: serializing twice gives identical bytes
            CHECK(dumped.dump() == io::symbol_to_json(*table.symbol(ell, j)).dump());
        }
}

TEST_CASE("quadratic-extension values survive the textual form") {
    ops::ConeOperator op;
    op.name = "irrational";
    op.n = 3;
    op.a1 = {ParamPoly(-1L)};
    op.a0 = {ParamPoly(QuadExt(exact::make_rational(-1, 4)))};
    op.b = {ParamPoly(-1L)};
    op.base = spectrum::sphere_spectrum(3);
    // delta_w(0) = sqrt(1/4 + 1/4) = sqrt(2)/2: poles live in Q(sqrt 2)
    symbols::SymbolTable table(op);
    const auto& sym = *table.symbol(0, 0);
    CHECK(sym.denominator.front().first.discriminant() == Rational(2));
    symbols::MellinSymbol back = io::symbol_from_json(io::symbol_to_json(sym));
    CHECK(symbols::equal(sym, back));
}

TEST_CASE("operator spec files load and validate") {
    TempFile good(R"({
        "name": "custom-coulomb",
        "n": 3,
        "a1": ["-1"],
        "a0": ["0", "2*Z", "-2*kappa_sq"],
        "b": ["-1"],
        "base": "sphere",
        "parameters": {"Z": "1", "kappa_sq": "1/2"},
        "truncation_order": 16
    })");
    ops::ConeOperator op = io::load_operator_file(good.path);
    CHECK(op.n == 3);
    CHECK(op.parameters.at("Z") == 1);
    CHECK(op.truncation_order == 16);
    // behaves like the built-in family
    symbols::SymbolTable table(op);
    symbols::SymbolTable builtin(ops::coulomb(Rational(1), exact::make_rational(1, 2)));
    CHECK(symbols::equal(*table.symbol(0, 3), *builtin.symbol(0, 3)));

    TempFile custom_base(R"({
        "name": "custom-base",
        "n": 3,
        "a1": ["-1"],
        "a0": ["0"],
        "b": ["-1"],
        "base": {"name": "toy", "modes": [["0", 1], ["5/2", 2]], "p0_coeff": "1/4", "p0_pi_power": -1}
    })");
    ops::ConeOperator cb = io::load_operator_file(custom_base.path);
    CHECK(cb.base->eigenvalue(1) == exact::make_rational(5, 2));
    CHECK(cb.base->multiplicity(1) == 2);

    TempFile bad_typeA(R"({
        "name": "bad",
        "n": 3,
        "a1": ["0"],
        "a0": ["0"],
        "b": ["-1"],
        "base": "sphere"
    })");
    CHECK_THROWS_AS(io::load_operator_file(bad_typeA.path), std::invalid_argument);

    TempFile malformed("{ not json");
    CHECK_THROWS_AS(io::load_operator_file(malformed.path), io::SpecError);
    CHECK_THROWS_AS(io::load_operator_file("/nonexistent/path.json"), io::SpecError);
}

TEST_CASE("doubles render with fixed significant digits") {
    CHECK(io::format_double(-1.0 / (4.0 * M_PI)) == io::format_double(-1.0 / (4.0 * M_PI)));
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(1e-12).find("e-12") != std::string::npos);
}
