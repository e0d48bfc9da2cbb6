#pragma once

#include <json.hpp>

#include "twistcube/label.hpp"
#include "twistcube/metrics.hpp"
#include "twistcube/routing.hpp"
#include "twistcube/verify.hpp"

// JSON views of the report types, with stable key order.

namespace twistcube {

using ordered_json = nlohmann::ordered_json;

inline ordered_json label_json(VertexLabel v, int n) {
    return ordered_json{{"dec", v}, {"bin", to_binary(v, n)}};
}

inline ordered_json to_json(const CheckReport& r) {
    ordered_json j;
    j["check"] = r.name;
    j["n"] = r.n;
    j["policy"] = policy_name(r.policy);
    j["seed"] = r.seed;
    j["scope"] = r.scope;
    j["checked"] = r.checked;
    j["passed"] = r.passed();
    j["failure_count"] = r.failure_count;
    j["failures"] = r.failures;
    return j;
}

inline ordered_json to_json(const DiameterReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["policy"] = policy_name(r.policy);
    j["seed"] = r.seed;
    if (r.exact) {
        j["exact"] = *r.exact;
    } else {
        j["exact"] = nullptr;
    }
    j["lower_bound"] = r.lower_bound;
    j["upper_bound"] = r.upper_bound;
    j["method"] = method_name(r.method);
    j["samples"] = r.samples;
    j["wall_time_s"] = r.wall_time_s;
    return j;
}

inline ordered_json to_json(const QuasirandomnessReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["policy"] = policy_name(r.policy);
    j["seed"] = r.seed;
    j["k"] = r.k;
    j["t"] = r.t;
    j["drop"] = r.drop;
    j["threshold"] = r.threshold;
    j["pairs"] = r.pairs;
    j["failures"] = r.failures;
    j["failure_frequency"] = r.failure_frequency;
    j["bound_valid"] = r.bound_valid;
    j["mean_pair_bound"] = r.mean_pair_bound;
    j["mean_ball"] = r.mean_ball;
    j["min_ball"] = r.min_ball;
    j["max_ball"] = r.max_ball;
    j["regime_warning"] = r.regime_warning;
    return j;
}

inline ordered_json to_json(const Path& p, int n) {
    ordered_json j;
    j["length"] = p.length();
    ordered_json dec = ordered_json::array();
    ordered_json bin = ordered_json::array();
    for (VertexLabel v : p.vertices) {
        dec.push_back(v);
        bin.push_back(to_binary(v, n));
    }
    j["vertices_dec"] = std::move(dec);
    j["vertices_bin"] = std::move(bin);
    j["levels"] = p.levels;
    j["phases"] = p.phases;
    j["alpha_trace"] = p.alpha_trace;
    return j;
}

}  // namespace twistcube
