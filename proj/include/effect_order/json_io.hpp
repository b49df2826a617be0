#pragma once

// JSON interchange.
//
//   matrix        {"dim": n, "entries": [[[re, im], ...], ...]}   (array of rows)
//   operator      {"kind": "linear" | "antilinear", "matrix": <matrix>}
//   automorphism  {"form": "canonical" | "alt" | "congruence", "p": x, "r": x, "operator": <operator>}
//   sampler       {"seed", "dim", "cond_max", "interior_margin", "kind_mix"}
//
// Loading validates the type invariants of the target and raises ParseError
// with the JSON path of the offending value.

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "effect_order/automorphisms.hpp"
#include "effect_order/errors.hpp"
#include "effect_order/hermitian.hpp"
#include "effect_order/interval_maps.hpp"
#include "effect_order/operators.hpp"
#include "effect_order/sampling.hpp"

namespace effect_order::io {

using Json = nlohmann::json;

// Relative deviation from self-adjointness accepted when loading a Hermitian matrix.
inline constexpr double hermitian_load_tol = 1e-9;

inline Json to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

inline Json to_json(const HermitianMatrix& a) { return to_json(a.matrix()); }
inline Json to_json(const Effect& a) { return to_json(a.matrix()); }

inline Json to_json(const BoundedOperator& t) {
    return Json{{"kind", to_string(t.kind())}, {"matrix", to_json(t.matrix())}};
}

inline Json to_json(const Automorphism& phi) {
    struct Visitor {
        Json operator()(const CanonicalParams& c) const {
            return Json{{"form", "canonical"}, {"p", c.p().value()}, {"operator", to_json(c.op())}};
        }
        Json operator()(const AltParams& a) const {
            return Json{{"form", "alt"}, {"p", a.p().value()}, {"r", a.r()}, {"operator", to_json(a.op())}};
        }
        Json operator()(const CongruenceParams& g) const {
            return Json{{"form", "congruence"}, {"operator", to_json(g.op())}};
        }
    };
    return std::visit(Visitor{}, phi);
}

inline Json to_json(const SamplerConfig& cfg) {
    return Json{{"seed", cfg.seed},
                {"dim", cfg.dim},
                {"cond_max", cfg.cond_max},
                {"interior_margin", cfg.interior_margin},
                {"kind_mix", cfg.kind_mix}};
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + ": missing field \"" + key + "\"");
    return *it;
}

inline double number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(path + ": number is not finite");
    return v;
}

template <typename F>
auto validated(const std::string& path, F&& build) {
    try {
        return build();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace detail

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "$") {
    const Json& dim_j = detail::field(j, "dim", path);
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
        throw ParseError(path + ".dim: expected a positive integer");
    }
    const auto n = static_cast<Index>(dim_j.get<long long>());
    const Json& rows = detail::field(j, "entries", path);
    const std::string epath = path + ".entries";
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
        throw ParseError(epath + ": expected an array of " + std::to_string(n) + " rows");
    }
    ComplexMatrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        const std::string rpath = epath + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw ParseError(rpath + ": expected an array of " + std::to_string(n) + " entries");
        }
        for (Index k = 0; k < n; ++k) {
            const Json& z = row[static_cast<std::size_t>(k)];
            const std::string zpath = rpath + "[" + std::to_string(k) + "]";
            if (!z.is_array() || z.size() != 2) throw ParseError(zpath + ": expected [re, im]");
            m(i, k) = Complex(detail::number(z[0], zpath + "[0]"), detail::number(z[1], zpath + "[1]"));
        }
    }
    return m;
}

inline HermitianMatrix hermitian_from_json(const Json& j, const std::string& path = "$") {
    const ComplexMatrix m = matrix_from_json(j, path);
    const double skew = (m - m.adjoint()).norm();
    if (skew > hermitian_load_tol * (1.0 + m.norm())) {
        throw ParseError(path + ": matrix is not Hermitian (||X - X^H||_F = " + std::to_string(skew) + ")");
    }
    return HermitianMatrix(m);
}

inline Effect effect_from_json(const Json& j, const std::string& path = "$") {
    const HermitianMatrix a = hermitian_from_json(j, path);
    return detail::validated(path, [&] { return Effect(a); });
}

inline BoundedOperator operator_from_json(const Json& j, const std::string& path = "$") {
    const Json& kind_j = detail::field(j, "kind", path);
    if (!kind_j.is_string()) throw ParseError(path + ".kind: expected a string");
    const std::string kind = kind_j.get<std::string>();
    Kind k;
    if (kind == "linear") {
        k = Kind::Linear;
    } else if (kind == "antilinear") {
        k = Kind::Antilinear;
    } else {
        throw ParseError(path + ".kind: expected \"linear\" or \"antilinear\", got \"" + kind + "\"");
    }
    return BoundedOperator(k, matrix_from_json(detail::field(j, "matrix", path), path + ".matrix"));
}

inline Automorphism automorphism_from_json(const Json& j, const std::string& path = "$") {
    const Json& form_j = detail::field(j, "form", path);
    if (!form_j.is_string()) throw ParseError(path + ".form: expected a string");
    const std::string form = form_j.get<std::string>();
    BoundedOperator op = operator_from_json(detail::field(j, "operator", path), path + ".operator");
    if (form == "canonical") {
        const double p = detail::number(detail::field(j, "p", path), path + ".p");
        return detail::validated(path, [&] { return Automorphism(CanonicalParams(MoebiusParam(p), op)); });
    }
    if (form == "alt") {
        const double p = detail::number(detail::field(j, "p", path), path + ".p");
        const double r = detail::number(detail::field(j, "r", path), path + ".r");
        return detail::validated(path, [&] { return Automorphism(AltParams(MoebiusParam(p), r, op)); });
    }
    if (form == "congruence") {
        return detail::validated(path, [&] { return Automorphism(CongruenceParams(op)); });
    }
    throw ParseError(path + ".form: expected \"canonical\", \"alt\" or \"congruence\", got \"" + form + "\"");
}

/// Missing fields keep their defaults.
inline SamplerConfig sampler_from_json(const Json& j, SamplerConfig cfg = {}, const std::string& path = "$") {
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ParseError(path + ".seed: expected an integer");
        }
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer()) throw ParseError(path + ".dim: expected an integer");
        cfg.dim = j["dim"].get<Index>();
    }
    if (j.contains("cond_max")) cfg.cond_max = detail::number(j["cond_max"], path + ".cond_max");
    if (j.contains("interior_margin")) {
        cfg.interior_margin = detail::number(j["interior_margin"], path + ".interior_margin");
    }
    if (j.contains("kind_mix")) cfg.kind_mix = detail::number(j["kind_mix"], path + ".kind_mix");
    detail::validated(path, [&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

/// Parses text, turning syntax errors into ParseError with the byte offset.
inline Json parse(const std::string& text, const std::string& source = "input") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace effect_order::io
