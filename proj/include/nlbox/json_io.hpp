#pragma once

// The "corr-array-v1" JSON wire format and the named catalog.
//
//   {"format":"corr-array-v1","p":[[[["1/2","0"],["0","1/2"]], ...], ...]}
//
// p is nested [x][y][a][b]. Each entry is either a string "num/den" (exact)
// or a JSON number, which is converted to the nearest multiple of 10^-6 and
// marks the parse as inexact. Extra object keys (e.g. "name", "note") are
// ignored on input. Exact arrays serialize as strings; float arrays (the
// quantum catalog entry) serialize as JSON numbers.

#include <json.hpp>

#include <string>
#include <vector>

#include "nlbox/boxes.hpp"
#include "nlbox/correlation.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/polytope.hpp"
#include "nlbox/tables.hpp"

namespace nlbox {

using Json = nlohmann::json;

inline constexpr const char* kArrayFormat = "corr-array-v1";

struct ParsedArray {
    CorrelationArray array;
    bool inexact_input = false;
};

inline Json serialize_array(const CorrelationArray& arr) {
    Json p = Json::array();
    for (int x = 0; x < 2; ++x) {
        Json px = Json::array();
        for (int y = 0; y < 2; ++y) {
            Json py = Json::array();
            for (int a = 0; a < 2; ++a) {
                Json pa = Json::array();
                for (int b = 0; b < 2; ++b) pa.push_back(to_string(arr.at(x, y, a, b)));
                py.push_back(std::move(pa));
            }
            px.push_back(std::move(py));
        }
        p.push_back(std::move(px));
    }
    return Json{{"format", kArrayFormat}, {"p", std::move(p)}};
}

inline Json serialize_array(const FloatArray& arr) {
    Json p = Json::array();
    for (int x = 0; x < 2; ++x) {
        Json px = Json::array();
        for (int y = 0; y < 2; ++y) {
            Json py = Json::array();
            for (int a = 0; a < 2; ++a) {
                Json pa = Json::array();
                for (int b = 0; b < 2; ++b) pa.push_back(arr.at(x, y, a, b));
                py.push_back(std::move(pa));
            }
            px.push_back(std::move(py));
        }
        p.push_back(std::move(px));
    }
    return Json{{"format", kArrayFormat}, {"p", std::move(p)}};
}

inline ParsedArray parse_array(const Json& j) {
    if (!j.is_object() || !j.contains("format") || !j.contains("p"))
        throw MalformedInput("expected an object with 'format' and 'p'");
    if (j.at("format") != kArrayFormat)
        throw MalformedInput("unsupported format (expected corr-array-v1)");
    const Json& p = j.at("p");
    std::array<Rational, CorrelationArray::kEntries> entries;
    bool inexact = false;
    auto dims_ok = [](const Json& node) { return node.is_array() && node.size() == 2; };
    if (!dims_ok(p)) throw MalformedInput("p must be a 2x2x2x2 nested array");
    for (int x = 0; x < 2; ++x) {
        if (!dims_ok(p[static_cast<std::size_t>(x)])) throw MalformedInput("p must be 2x2x2x2");
        for (int y = 0; y < 2; ++y) {
            const Json& cell = p[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (!dims_ok(cell)) throw MalformedInput("p must be 2x2x2x2");
            for (int a = 0; a < 2; ++a) {
                const Json& row = cell[static_cast<std::size_t>(a)];
                if (!dims_ok(row)) throw MalformedInput("p must be 2x2x2x2");
                for (int b = 0; b < 2; ++b) {
                    const Json& v = row[static_cast<std::size_t>(b)];
                    Rational r;
                    if (v.is_string()) {
                        r = parse_rational(v.get<std::string>());
                    } else if (v.is_number()) {
                        r = rational_from_double(v.get<double>());
                        inexact = true;
                    } else {
                        throw MalformedInput("array entries must be strings or numbers");
                    }
                    entries[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))] = r;
                }
            }
        }
    }
    return {make_array(std::move(entries)), inexact};
}

// ---------------------------------------------------------------------------
// Catalog

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "table2", "table3", "table4", "table5", "table6",
        "table7", "table8", "uniform", "pr",     "quantum-tsirelson"};
    return names;
}

inline bool is_catalog_name(const std::string& name) {
    for (const std::string& n : catalog_names())
        if (n == name) return true;
    return false;
}

inline Json catalog_json(const std::string& name) {
    Json j;
    if (name == "quantum-tsirelson") {
        j = serialize_array(quantum_array(tsirelson_settings()));
    } else {
        j = serialize_array(tables::by_name(name));  // throws UnknownCatalogEntry
        if (name == "table8")
            j["note"] = "as-printed; the printed entries duplicate table7 and are "
                        "inconsistent with the table's caption";
    }
    j["name"] = name;
    return j;
}

// ---------------------------------------------------------------------------
// Certificates and reports

inline Json serialize_decomposition(const VertexSet& set, const Decomposition& d) {
    Json weights = Json::array();
    for (const auto& [idx, w] : d.weights)
        weights.push_back(Json{{"vertex", set.labels[idx]}, {"weight", to_string(w)}});
    return Json{{"type", "decomposition"}, {"weights", std::move(weights)}};
}

inline Json serialize_inequality(const SeparatingInequality& ineq) {
    Json coeffs = Json::array();
    for (const Rational& c : ineq.coefficients) coeffs.push_back(to_string(c));
    return Json{{"type", "inequality"},
                {"coefficients", std::move(coeffs)},
                {"bound", to_string(ineq.bound)},
                {"value_at_target", to_string(ineq.value_at_target)},
                {"note", ineq.note}};
}

inline Json serialize_verdict(const VertexSet& set, const MembershipVerdict& v) {
    Json j{{"inside", v.inside}};
    if (v.inside)
        j["certificate"] = serialize_decomposition(set, *v.decomposition);
    else
        j["certificate"] = serialize_inequality(*v.inequality);
    return j;
}

inline Json serialize_signaling(const SignalingReport& rep) {
    Json witnesses = Json::array();
    for (const SignalingWitness& w : rep.witnesses) {
        witnesses.push_back(Json{{"party", w.party == Party::Alice ? "alice" : "bob"},
                                 {"outcome", w.outcome},
                                 {"local_input", w.local_input},
                                 {"remote_inputs", Json::array({0, 1})},
                                 {"values", Json::array({to_string(w.value_remote0),
                                                         to_string(w.value_remote1)})}});
    }
    return Json{{"alice_to_bob", rep.alice_to_bob},
                {"bob_to_alice", rep.bob_to_alice},
                {"witnesses", std::move(witnesses)}};
}

inline Json serialize_chsh(const ChshStats& s) {
    return Json{{"expectations",
                 Json{{"00", to_string(s.expectation(0, 0))},
                      {"01", to_string(s.expectation(0, 1))},
                      {"10", to_string(s.expectation(1, 0))},
                      {"11", to_string(s.expectation(1, 1))}}},
                {"K", to_string(s.K)},
                {"E", to_string(s.E)}};
}

inline Json serialize_session(const BoxSession& session) {
    const SessionConfig& cfg = session.config;
    Json rounds = Json::array();
    for (const SessionRound& r : session.rounds) {
        Json jr{{"x", r.x}, {"y", r.y}, {"a", r.a}, {"b", r.b}};
        if (r.lambda) jr["lambda"] = *r.lambda;
        rounds.push_back(std::move(jr));
    }
    Json j{{"kind", to_string(cfg.kind)},
           {"rounds", cfg.rounds},
           {"seed", cfg.seed},
           {"session", std::move(rounds)}};
    if (cfg.kind == BoxKind::Bohm) {
        j["order"] = to_string(cfg.order);
        j["disclose_lambda"] = cfg.disclose_lambda;
    }
    if (cfg.kind == BoxKind::Quantum)
        j["angles"] = Json::array({cfg.settings.alpha0, cfg.settings.alpha1, cfg.settings.beta0,
                                   cfg.settings.beta1});
    if (cfg.kind == BoxKind::Classical) j["vertex"] = cfg.vertex_id;
    return j;
}

inline Json serialize_empirical(const EmpiricalArray& e) {
    Json j = serialize_array(e.estimate);
    Json se = Json::array();
    for (int x = 0; x < 2; ++x) {
        Json sx = Json::array();
        for (int y = 0; y < 2; ++y) {
            Json sy = Json::array();
            for (int a = 0; a < 2; ++a) {
                Json sa = Json::array();
                for (int b = 0; b < 2; ++b)
                    sa.push_back(e.standard_error[static_cast<std::size_t>(
                        CorrelationArray::index(x, y, a, b))]);
                sy.push_back(std::move(sa));
            }
            sx.push_back(std::move(sy));
        }
        se.push_back(std::move(sx));
    }
    j["stderr"] = std::move(se);
    j["cell_counts"] = Json::array({e.cell_counts[0], e.cell_counts[1], e.cell_counts[2],
                                    e.cell_counts[3]});
    return j;
}

}  // namespace nlbox
