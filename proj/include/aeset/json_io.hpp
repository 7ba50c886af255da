// JSON readers and writers for the CLI surface. Complex numbers are
// [re, im] pairs; polynomial exponents and coefficients travel as decimal
// strings so exact integers survive the trip.
#pragma once

#include "aeset/constructions.hpp"
#include "aeset/entanglement.hpp"
#include "aeset/feng.hpp"
#include "aeset/linalg.hpp"
#include "aeset/root_isolation.hpp"
#include "aeset/search.hpp"
#include "aeset/sparse_poly.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aeset {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("expected complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const Vec& v) {
    Json out = Json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

inline Vec vec_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected nonempty vector");
    Vec v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

inline Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected nonempty matrix");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

// State set: {"dim": d, "states": [[[re,im],...],...], "labels": [...]}
inline Json to_json(const StateSet& set) {
    Json out;
    out["dim"] = set.dim();
    Json states = Json::array();
    for (const Vec& s : set.states()) states.push_back(to_json(s));
    out["states"] = std::move(states);
    out["labels"] = set.labels();
    return out;
}

inline StateSet state_set_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("states"))
        throw std::invalid_argument("state set JSON needs \"dim\" and \"states\"");
    const int dim = j.at("dim").get<int>();
    std::vector<Vec> states;
    for (const Json& js : j.at("states")) {
        Vec v = vec_from_json(js);
        if (v.size() != dim) throw std::invalid_argument("state length disagrees with \"dim\"");
        states.push_back(std::move(v));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return StateSet(std::move(states), std::move(labels));
}

// Partitioned family: {"dim": d, "parts": [[state,...],...]}. The part
// boundaries carry the orthogonal-subfamily structure that prop2 needs.
inline Json to_json(const PartitionedSet& pset) {
    Json out;
    out["dim"] = pset.bip.dim();
    Json parts = Json::array();
    for (const StateSet& part : pset.parts) {
        Json states = Json::array();
        for (const Vec& s : part.states()) states.push_back(to_json(s));
        parts.push_back(std::move(states));
    }
    out["parts"] = std::move(parts);
    return out;
}

inline PartitionedSet partitioned_set_from_json(const Json& j, Bipartition bip) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("parts"))
        throw std::invalid_argument("partitioned set JSON needs \"dim\" and \"parts\"");
    const int dim = j.at("dim").get<int>();
    if (dim != bip.dim())
        throw std::invalid_argument("partitioned set dimension disagrees with bipartition");
    std::vector<StateSet> parts;
    for (const Json& jp : j.at("parts")) {
        std::vector<Vec> states;
        for (const Json& js : jp) {
            Vec v = vec_from_json(js);
            if (v.size() != dim) throw std::invalid_argument("state length disagrees with \"dim\"");
            states.push_back(std::move(v));
        }
        parts.emplace_back(std::move(states));
    }
    return PartitionedSet(std::move(parts), bip);
}

// Polynomial: [{"e": "<exponent>", "c": "<coefficient>"}, ...] ascending.
inline Json to_json(const SparsePoly& poly) {
    Json out = Json::array();
    for (const auto& [e, c] : poly.terms()) {
        Json term;
        term["e"] = e.get_str();
        term["c"] = c.get_str();
        out.push_back(std::move(term));
    }
    return out;
}

inline SparsePoly poly_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of terms");
    SparsePoly p;
    for (const Json& t : j) {
        if (!t.is_object() || !t.contains("e") || !t.contains("c"))
            throw std::invalid_argument("polynomial term needs \"e\" and \"c\"");
        p.add_term(mpz_class(t.at("e").get<std::string>()),
                   mpz_class(t.at("c").get<std::string>()));
    }
    return p;
}

inline Json to_json(const RealRoot& root) {
    Json out;
    out["value"] = root.value;
    out["low"] = root.low.get_str();
    out["high"] = root.high.get_str();
    out["exact"] = root.exact;
    return out;
}

// Feng basis: {"blocks": [{"a": [...], "A": [[...],...], "Aprime": [[...],...]}]}
inline Json to_json(const FengBasis& fb) {
    Json blocks = Json::array();
    for (const FengBlock& b : fb.blocks) {
        Json jb;
        jb["a"] = to_json(b.a);
        Json fam = Json::array();
        for (const Vec& v : b.A) fam.push_back(to_json(v));
        jb["A"] = std::move(fam);
        Json famp = Json::array();
        for (const Vec& v : b.Aprime) famp.push_back(to_json(v));
        jb["Aprime"] = std::move(famp);
        blocks.push_back(std::move(jb));
    }
    return Json{{"blocks", std::move(blocks)}};
}

inline FengBasis feng_basis_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("blocks"))
        throw std::invalid_argument("Feng basis JSON needs \"blocks\"");
    FengBasis fb;
    for (const Json& jb : j.at("blocks")) {
        if (!jb.is_object() || !jb.contains("a") || !jb.contains("A") || !jb.contains("Aprime"))
            throw std::invalid_argument("Feng block needs \"a\", \"A\", \"Aprime\"");
        FengBlock block;
        block.a = vec_from_json(jb.at("a"));
        for (const Json& jv : jb.at("A")) block.A.push_back(vec_from_json(jv));
        for (const Json& jv : jb.at("Aprime")) block.Aprime.push_back(vec_from_json(jv));
        fb.blocks.push_back(std::move(block));
    }
    return fb;
}

inline Json to_json(const Prop1Report& report) {
    Json per = Json::array();
    for (const Prop1Report::Entry& e : report.per_index) {
        Json je;
        je["index"] = e.index + 1;  // 1-based in the external surface
        je["dim"] = e.dim;
        je["pass"] = e.pass;
        per.push_back(std::move(je));
    }
    Json out;
    out["d2"] = report.d2;
    out["pass"] = report.pass;
    out["per_index"] = std::move(per);
    return out;
}

inline Json to_json(const FengReport& report) {
    Json out;
    out["condition1"] = report.condition1;
    out["condition2"] = report.condition2;
    out["condition3"] = report.condition3;
    out["condition4"] = report.condition4;
    out["pairs_distinct"] = report.pairs_distinct;
    out["flattened_orthonormal"] = report.flattened_orthonormal;
    out["pass"] = report.pass();
    out["detail"] = report.detail;
    return out;
}

inline Json to_json(const SearchReport& report) {
    Json restarts = Json::array();
    for (const RestartTrace& tr : report.per_restart) {
        Json jt;
        jt["seed"] = tr.seed;
        jt["objective"] = tr.objective;
        jt["iters"] = tr.iters;
        restarts.push_back(std::move(jt));
    }
    Json out;
    out["best_objective"] = report.best_objective;
    out["verdict"] = verdict_name(report.verdict);
    out["unitary"] = to_json(report.best_unitary);
    out["restarts"] = std::move(restarts);
    if (report.verdict == Verdict::NoMappingFound) out["note"] = "evidence, not proof";
    return out;
}

}  // namespace aeset
