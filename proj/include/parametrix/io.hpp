#pragma once

#include "parametrix/kernel.hpp"
#include "parametrix/operators.hpp"
#include "parametrix/symbols.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace parametrix::io {

using exact::ParamPoly;
using exact::QuadExt;
using exact::Rational;
using json = nlohmann::ordered_json;

// Floating-point values are rendered with a fixed number of significant
// digits so identical runs produce byte-identical output.
inline std::string format_double(double v, int digits = 15) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return std::string(buf);
}

inline json quadext_to_json(const QuadExt& v) { return v.str(); }
inline QuadExt quadext_from_json(const json& j) { return QuadExt::parse(j.get<std::string>()); }

inline json parampoly_to_json(const ParamPoly& p) {
    json terms = json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        json t;
        t["coeff"] = coeff.str();
        json m = json::object();
        for (const auto& [name, e] : mono) m[name] = e;
        t["monomial"] = m;
        terms.push_back(t);
    }
    return terms;
}

inline ParamPoly parampoly_from_json(const json& j) {
    ParamPoly p;
    for (const auto& t : j) {
        exact::Monomial m;
        for (auto it = t.at("monomial").begin(); it != t.at("monomial").end(); ++it)
            m[it.key()] = it.value().get<int>();
        p += ParamPoly(std::move(m), QuadExt::parse(t.at("coeff").get<std::string>()));
    }
    return p;
}

inline json symbol_to_json(const symbols::MellinSymbol& s) {
    json j;
    j["scalar"] = parampoly_to_json(s.scalar);
    json num = json::array();
    for (const auto& c : s.numerator.coeffs()) num.push_back(parampoly_to_json(c));
    j["numerator"] = num;
    json den = json::array();
    for (const auto& [root, mult] : s.denominator) {
        json f;
        f["root"] = root.str();
        f["multiplicity"] = mult;
        den.push_back(f);
    }
    j["denominator"] = den;
    return j;
}

inline symbols::MellinSymbol symbol_from_json(const json& j) {
    symbols::MellinSymbol s;
    s.scalar = parampoly_from_json(j.at("scalar"));
    std::vector<ParamPoly> coeffs;
    for (const auto& c : j.at("numerator")) coeffs.push_back(parampoly_from_json(c));
    s.numerator = exact::PPoly(std::move(coeffs));
    s.denominator.clear();
    for (const auto& f : j.at("denominator"))
        s.denominator.emplace_back(QuadExt::parse(f.at("root").get<std::string>()),
                                   f.at("multiplicity").get<int>());
    return s;
}

inline json kernel_term_to_json(const kernel::KernelTerm& t) {
    json j;
    j["ell"] = t.ell;
    j["coefficient"] = parampoly_to_json(t.coefficient);
    j["r_exponent"] = t.r_exponent.str();
    j["rtilde_exponent"] = t.rtilde_exponent.str();
    j["log_r"] = t.log_r;
    j["log_rtilde"] = t.log_rtilde;
    j["region"] = t.region == kernel::Region::r_greater ? "r-greater" : "r-less";
    return j;
}

inline json series_to_json(const kernel::FundamentalSolutionSeries& s) {
    json j;
    j["n"] = s.n;
    j["p0"] = {{"coeff", exact::to_string(s.p0.coeff)}, {"pi_power", s.p0.pi_power}};
    json orders = json::array();
    for (const auto& entries : s.orders) {
        json order = json::array();
        for (const auto& e : entries) {
            json entry;
            entry["coeff"] = parampoly_to_json(e.coeff);
            entry["log_r"] = e.log_r;
            order.push_back(entry);
        }
        orders.push_back(order);
    }
    j["orders"] = orders;
    return j;
}

// ---------------------------------------------------------------------------
// Operator spec files.
// ---------------------------------------------------------------------------

struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient entries are rational strings, optionally times parameter
// monomials: "3/4", "2*Z", "-2*kappa_sq", "1/2*kappa_sq^2*Z".
inline ParamPoly parse_coefficient(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == '*') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.empty() || parts.front().empty()) throw SpecError("empty coefficient");
    Rational value = exact::parse_rational(parts.front());
    exact::Monomial mono;
    for (size_t i = 1; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        auto caret = p.find('^');
        std::string name = caret == std::string::npos ? p : p.substr(0, caret);
        int power = caret == std::string::npos ? 1 : std::stoi(p.substr(caret + 1));
        if (name.empty() || power <= 0) throw SpecError("bad parameter monomial '" + p + "'");
        mono[name] += power;
    }
    return ParamPoly(std::move(mono), QuadExt(value));
}

inline std::vector<ParamPoly> parse_series(const json& j, const std::string& which) {
    std::vector<ParamPoly> out;
    if (!j.is_array()) throw SpecError("coefficient series '" + which + "' must be an array");
    for (const auto& entry : j) {
        if (!entry.is_string()) throw SpecError("coefficient series '" + which + "' entries must be strings");
        out.push_back(parse_coefficient(entry.get<std::string>()));
    }
    return out;
}

inline ops::ConeOperator operator_from_json(const json& j) {
    ops::ConeOperator op;
    try {
        op.name = j.value("name", std::string("operator"));
        op.n = j.at("n").get<int>();
        if (j.contains("a2")) op.a2 = parse_series(j.at("a2"), "a2");
        op.a1 = parse_series(j.at("a1"), "a1");
        op.a0 = parse_series(j.at("a0"), "a0");
        op.b = parse_series(j.at("b"), "b");
        if (j.contains("truncation_order")) op.truncation_order = j.at("truncation_order").get<int>();
        if (j.contains("gamma")) op.gamma_override = exact::parse_rational(j.at("gamma").get<std::string>());
        if (j.contains("parameters"))
            for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
                op.parameters[it.key()] = exact::parse_rational(it.value().get<std::string>());
        const json& base = j.at("base");
        if (base.is_string() && base.get<std::string>() == "sphere") {
            op.base = spectrum::sphere_spectrum(op.n);
        } else if (base.is_object()) {
            std::vector<std::pair<Rational, long>> modes;
            for (const auto& mode : base.at("modes"))
                modes.emplace_back(exact::parse_rational(mode.at(0).get<std::string>()), mode.at(1).get<long>());
            spectrum::PiScaled p0{exact::parse_rational(base.at("p0_coeff").get<std::string>()),
                                  base.at("p0_pi_power").get<int>()};
            op.base = std::make_shared<spectrum::CustomSpectrum>(op.n - 1, std::move(modes), p0,
                                                                 base.value("name", std::string("custom")));
        } else {
            throw SpecError("base must be \"sphere\" or a custom spectrum object");
        }
    } catch (const json::exception& e) {
        throw SpecError(std::string("operator spec: ") + e.what());
    }
    op.validate();
    return op;
}

inline ops::ConeOperator load_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open operator spec '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecError("operator spec '" + path + "': " + e.what());
    }
    return operator_from_json(j);
}

} // namespace parametrix::io
