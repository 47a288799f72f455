#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "characters.hpp"
#include "coefficient.hpp"
#include "crystal.hpp"
#include "fock.hpp"
#include "series.hpp"
#include "wedge.hpp"

namespace qfock {

/// Key order is preserved so equal values serialize to identical bytes.
using Json = nlohmann::ordered_json;

// -- scalars ------------------------------------------------------------

/// [[exp, "p/q"], ...] with exponents ascending.
inline Json laurent_to_json(const LaurentPoly& p) {
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e, rational_str(c)}));
    return out;
}

inline LaurentPoly laurent_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("laurent: expected an array of [exp, coeff]");
    LaurentPoly p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
            throw std::invalid_argument("laurent: each term must be [int, \"p/q\"]");
        p.add_term(t[0].get<int>(), parse_rational(t[1].get<std::string>()));
    }
    return p;
}

inline Json coefficient_to_json(const Coefficient& c) {
    return Json{{"num", laurent_to_json(c.num())}, {"den", laurent_to_json(c.den())}};
}

inline Coefficient coefficient_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw std::invalid_argument("coefficient: expected {\"num\": ..., \"den\": ...}");
    return Coefficient(laurent_from_json(j["num"]), laurent_from_json(j["den"]));
}

inline Json series_to_json(const TruncSeries& s) {
    Json terms = Json::array();
    for (int k = 0; k < s.precision(); ++k)
        if (s.coeff(k) != 0) terms.push_back(Json::array({k, rational_str(s.coeff(k))}));
    return Json{{"precision", s.precision()}, {"terms", terms}};
}

inline TruncSeries series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("precision") || !j.contains("terms"))
        throw std::invalid_argument("series: expected {\"precision\": N, \"terms\": ...}");
    return TruncSeries(laurent_from_json(j["terms"]), j["precision"].get<int>());
}

// -- labels and vectors -------------------------------------------------

inline Json afflabel_to_json(AffLabel b) { return Json{{"a", b.a}, {"j", b.j}}; }

inline AffLabel afflabel_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("j"))
        throw std::invalid_argument("label: expected {\"a\": int, \"j\": int}");
    int a = j["a"].get<int>(), jj = j["j"].get<int>();
    if (jj < 0 || jj > 2) throw std::invalid_argument("label: color j must be 0, 1 or 2");
    return AffLabel{a, jj};
}

inline Json affvector_to_json(const AffVector& v) {
    Json out = Json::array();
    for (const auto& [b, c] : v.terms()) {
        Json t = afflabel_to_json(b);
        t["coeff"] = coefficient_to_json(c);
        out.push_back(std::move(t));
    }
    return out;
}

inline AffVector affvector_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector: expected an array of terms");
    AffVector v;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coeff"))
            throw std::invalid_argument("vector: each term needs a \"coeff\"");
        v.add_term(afflabel_from_json(t), coefficient_from_json(t["coeff"]));
    }
    return v;
}

inline Json wedgevector_to_json(const WedgeVector& v) {
    Json terms = Json::array();
    for (const auto& [w, c] : v.terms()) {
        Json factors = Json::array();
        for (AffLabel b : w.factors) factors.push_back(afflabel_to_json(b));
        terms.push_back(Json{{"factors", std::move(factors)}, {"coeff", coefficient_to_json(c)}});
    }
    return Json{{"arity", v.arity()}, {"terms", std::move(terms)}};
}

inline WedgeVector wedgevector_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("arity") || !j.contains("terms"))
        throw std::invalid_argument("wedge: expected {\"arity\": n, \"terms\": ...}");
    WedgeVector v(j["arity"].get<std::size_t>());
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("factors") || !t.contains("coeff"))
            throw std::invalid_argument("wedge: each term needs \"factors\" and \"coeff\"");
        PureWedge w;
        for (const auto& f : t["factors"]) w.factors.push_back(afflabel_from_json(f));
        if (w.arity() != v.arity())
            throw std::invalid_argument("wedge: term arity does not match the header");
        v.add_term(std::move(w), coefficient_from_json(t["coeff"]));
    }
    return v;
}

inline Json fockvector_to_json(const FockVector& v) {
    Json terms = Json::array();
    for (const auto& [w, c] : v.terms()) {
        Json factors = Json::array();
        for (AffLabel b : w.factors) factors.push_back(afflabel_to_json(b));
        terms.push_back(Json{{"factors", std::move(factors)}, {"coeff", coefficient_to_json(c)}});
    }
    return Json{{"m", v.start()},
                {"seq", ground_name(v.seq())},
                {"L", v.body_length()},
                {"precision", v.precision()},
                {"terms", std::move(terms)}};
}

inline FockVector fockvector_from_json(const Json& j) {
    for (const char* key : {"m", "seq", "L", "precision", "terms"})
        if (!j.is_object() || !j.contains(key))
            throw std::invalid_argument(std::string("fock: missing \"") + key + "\"");
    auto seq = parse_ground(j["seq"].get<std::string>());
    if (!seq) throw std::invalid_argument("fock: seq must be \"A\" or \"B\"");
    FockVector v(*seq, j["m"].get<int>(), j["precision"].get<int>());
    const int L = j["L"].get<int>();
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("factors") || !t.contains("coeff"))
            throw std::invalid_argument("fock: each term needs \"factors\" and \"coeff\"");
        PureWedge w;
        for (const auto& f : t["factors"]) w.factors.push_back(afflabel_from_json(f));
        if (static_cast<int>(w.arity()) != L)
            throw std::invalid_argument("fock: term length does not match the header");
        v.add_term(std::move(w), coefficient_from_json(t["coeff"]));
    }
    v.pad_to(L);
    return v;
}

// -- reports ------------------------------------------------------------

inline Json perfect_report_to_json(const PerfectCheckReport& r) {
    Json extremal = Json::array();
    for (CrystalElt b : r.extremal) extremal.push_back(b.str());
    return Json{{"level", r.level},
                {"weights_in_hull", r.weights_in_hull},
                {"extremal_unique", r.extremal_unique},
                {"tensor_connected", r.tensor_connected},
                {"min_eps_level", r.min_eps_level},
                {"eps_phi_bijective", r.eps_phi_bijective},
                {"extremal", std::move(extremal)},
                {"min_eps", r.min_eps},
                {"ok", r.ok()}};
}

inline Json multtable_to_json(const MultTable& t) {
    Json rows = Json::array();
    for (const auto& [key, v] : t.mult)
        rows.push_back(Json{{"d", key.d}, {"t", key.t}, {"mult", v}});
    return Json{{"lambda", t.lambda.str()}, {"depth", t.cutoff}, {"cells", std::move(rows)}};
}

inline Json character_report_to_json(const CharacterReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells)
        cells.push_back(Json{{"d", c.d}, {"t", c.t}, {"fock", c.fock}, {"conv", c.conv}});
    Json mism = Json::array();
    for (const auto& c : r.mismatches)
        mism.push_back(Json{{"d", c.d}, {"t", c.t}, {"fock", c.fock}, {"conv", c.conv}});
    return Json{{"seq", ground_name(r.seq)},
                {"m", r.m},
                {"depth", r.depth},
                {"fock", multtable_to_json(r.fock)},
                {"irreducible", multtable_to_json(r.irr)},
                {"partitions", r.partitions},
                {"cells", std::move(cells)},
                {"mismatches", std::move(mism)},
                {"ok", r.ok}};
}

} // namespace qfock
