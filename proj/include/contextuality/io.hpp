#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "contextuality/bell.hpp"
#include "contextuality/core.hpp"
#include "contextuality/lg.hpp"

// System documents (JSON):
//
//   {"kind": "bell" | "lg",
//    "representation": "cells" | "expectations",
//    "pairs": {"11": {"pp": "1/2", "pm": "0", "mp": "0", "mm": "1/2"}, ...}}
//
// Bell pair labels are 11, 12, 21, 22 (pair (A_ij, B_ij)); LG labels are 12,
// 13, 23 (pair (Q_ij, Q_ji)). With "expectations" each pair carries
// {"x", "y", "xy"} = (<first>, <second>, <product>). Numbers are strings
// ("0.25", "1/4") or JSON numbers, which are read from their decimal text.

namespace contextuality::io {

using json = nlohmann::json;
using AnySystem = std::variant<BellSystem, LGSystem>;

/// How numbers are written: exact "p/q" by default, or rounded to `decimals`.
struct NumberFormat {
    std::optional<int> decimals;

    std::string operator()(const Scalar& x) const { return decimals ? to_decimal(x, *decimals) : to_string(x); }
};

inline Scalar read_number(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_scalar(v.get<std::string>());
        if (v.is_number()) return parse_scalar(v.dump());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a number or numeric string");
}

namespace detail {

template <PairSystem S>
S read_pairs(const json& doc, bool cells) {
    if (!doc.contains("pairs") || !doc["pairs"].is_object()) throw ParseError("missing object \"pairs\"");
    const json& pairs = doc["pairs"];
    S sys;
    const auto labels = S::pair_labels();
    for (const auto& [key, _] : pairs.items()) {
        if (std::find(labels.begin(), labels.end(), key) == labels.end())
            throw ParseError("pair " + key + ": unknown pair label for a " + std::string(S::kind) + " system");
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const std::string label(labels[k]);
        if (!pairs.contains(label)) throw ParseError("pair " + label + ": missing");
        const json& p = pairs[label];
        const auto field = [&](const char* name) {
            if (!p.contains(name)) throw ParseError("pair " + label + ", field " + name + ": missing");
            return read_number(p[name], "pair " + label + ", field " + name);
        };
        if (cells) {
            sys.pairs[k] = {field("pp"), field("pm"), field("mp"), field("mm")};
        } else {
            try {
                sys.pairs[k] = pair_from_expectations(field("x"), field("y"), field("xy"));
            } catch (const FrechetViolation& e) {
                throw ParseError("pair " + label + ", field xy: " + e.what());
            }
        }
    }
    return sys;
}

}  // namespace detail

/// Parses a system document. Cell values are not validated here; run
/// `validate` on the result.
inline AnySystem parse_system(const json& doc) {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw ParseError("missing string field \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    std::string repr = "cells";
    if (doc.contains("representation")) {
        if (!doc["representation"].is_string()) throw ParseError("\"representation\" must be a string");
        repr = doc["representation"].get<std::string>();
    }
    if (repr != "cells" && repr != "expectations")
        throw ParseError("unknown representation \"" + repr + "\" (expected cells or expectations)");
    const bool cells = repr == "cells";
    if (kind == "bell") return detail::read_pairs<BellSystem>(doc, cells);
    if (kind == "lg") return detail::read_pairs<LGSystem>(doc, cells);
    throw ParseError("unknown kind \"" + kind + "\" (expected bell or lg)");
}

inline AnySystem parse_system(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_system(doc);
}

inline AnySystem parse_system(const char* text) { return parse_system(std::string(text)); }

template <PairSystem S>
json to_document(const S& sys, const NumberFormat& fmt = {}) {
    json doc{{"kind", std::string(S::kind)}, {"representation", "cells"}};
    json pairs = json::object();
    const auto labels = S::pair_labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto& p = sys.pairs[k];
        pairs[std::string(labels[k])] = {{"pp", fmt(p.pp)}, {"pm", fmt(p.pm)}, {"mp", fmt(p.mp)}, {"mm", fmt(p.mm)}};
    }
    doc["pairs"] = std::move(pairs);
    return doc;
}

inline json to_json(const bell::Report& r, const NumberFormat& fmt = {}) {
    return {{"kind", "bell"},
            {"delta0", fmt(r.delta0)},
            {"chsh_stat", fmt(r.chsh_stat)},
            {"delta_min", fmt(r.delta_min)},
            {"delta_max", fmt(r.delta_max)},
            {"degree", fmt(r.degree)},
            {"noncontextual", r.noncontextual},
            {"signaling", r.signaling},
            {"classic_chsh_satisfied", r.classic_chsh_satisfied}};
}

inline json to_json(const lg::Report& r, bool causal, const NumberFormat& fmt = {}) {
    return {{"kind", "lg"},
            {"causal", causal},
            {"delta0_prime", fmt(r.delta0_prime)},
            {"lg_stat", fmt(r.lg_stat)},
            {"delta_min", fmt(r.delta_min)},
            {"delta_max", fmt(r.delta_max)},
            {"degree", fmt(r.degree)},
            {"noncontextual", r.noncontextual},
            {"signaling", r.signaling},
            {"classic_lgsz_satisfied", r.classic_lgsz_satisfied}};
}

inline bell::Report bell_report_from_json(const json& j) {
    return {read_number(j.at("delta0"), "delta0"),
            read_number(j.at("chsh_stat"), "chsh_stat"),
            read_number(j.at("delta_min"), "delta_min"),
            read_number(j.at("delta_max"), "delta_max"),
            read_number(j.at("degree"), "degree"),
            j.at("noncontextual").get<bool>(),
            j.at("signaling").get<bool>(),
            j.at("classic_chsh_satisfied").get<bool>()};
}

inline lg::Report lg_report_from_json(const json& j) {
    return {read_number(j.at("delta0_prime"), "delta0_prime"),
            read_number(j.at("lg_stat"), "lg_stat"),
            read_number(j.at("delta_min"), "delta_min"),
            read_number(j.at("delta_max"), "delta_max"),
            read_number(j.at("degree"), "degree"),
            j.at("noncontextual").get<bool>(),
            j.at("signaling").get<bool>(),
            j.at("classic_lgsz_satisfied").get<bool>()};
}

}  // namespace contextuality::io
