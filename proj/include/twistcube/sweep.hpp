#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twistcube/graph.hpp"
#include "twistcube/math_util.hpp"
#include "twistcube/metrics.hpp"
#include "twistcube/routing.hpp"

namespace twistcube {

// One experiment cell is (n, policy, seed); a sweep is the cross product of
// the configured lists. Records are a pure function of the config.
struct SweepConfig {
    std::vector<int> n_values = {4, 5, 6, 7, 8, 9, 10};
    std::vector<CouplingPolicy> policies = {CouplingPolicy::Duplicube, CouplingPolicy::Independent};
    int seeds_per_cell = 1;
    std::uint64_t seed_base = 1;
    int exact_cap = 16;
    std::uint64_t sources = 16;   // sampled-diameter sources (n beyond exact_cap)
    std::uint64_t pairs = 256;    // routed pairs per cell
    std::optional<int> router_t;  // nullopt = auto schedule
    std::optional<int> router_n0;
    std::string output = "sweep.csv";
    std::string format = "csv";  // csv | json
    unsigned threads = 0;
    bool record_timing = true;  // false blanks the wall-time columns in the output

    void validate() const {
        if (n_values.empty()) throw std::invalid_argument("sweep config: n list is empty");
        for (int n : n_values) {
            if (n < 1 || n > kMaxDimension) {
                throw std::invalid_argument("sweep config: n=" + std::to_string(n) +
                                            " outside [1, 30]");
            }
        }
        if (policies.empty()) throw std::invalid_argument("sweep config: policies list is empty");
        if (seeds_per_cell < 1) throw std::invalid_argument("sweep config: seeds must be >= 1");
        if (exact_cap < 1) throw std::invalid_argument("sweep config: exact_cap must be >= 1");
        if (sources < 1) throw std::invalid_argument("sweep config: sources must be >= 1");
        if (pairs < 1) throw std::invalid_argument("sweep config: pairs must be >= 1");
        if (format != "csv" && format != "json") {
            throw std::invalid_argument("sweep config: format must be csv or json");
        }
        if (router_t && *router_t < 1) throw std::invalid_argument("sweep config: t must be >= 1");
        if (router_n0 && *router_n0 < 1) {
            throw std::invalid_argument("sweep config: n0 must be >= 1");
        }
    }
};

struct SweepRecord {
    int n = 0;
    CouplingPolicy policy = CouplingPolicy::IdentityMatching;
    std::uint64_t seed = 0;
    std::optional<int> diam_exact;
    std::optional<int> diam_lower;
    std::optional<int> diam_upper;
    std::optional<DiameterMethod> method;
    std::uint64_t route_pairs = 0;
    std::uint64_t greedy_total = 0;  // integer sums keep the record thread-count independent
    int greedy_max = 0;
    std::uint64_t twist_total = 0;
    int twist_max = 0;
    std::uint64_t phase_total = 0;
    std::uint64_t drop_total = 0;
    std::optional<double> ratio;  // diameter / (n / log2 n); absent for n = 1
    double build_s = 0.0;
    double measure_s = 0.0;
    std::string skip_reason;  // nonempty: cell was skipped, other fields absent

    bool skipped() const { return !skip_reason.empty(); }
    double greedy_mean() const {
        return route_pairs ? static_cast<double>(greedy_total) / static_cast<double>(route_pairs) : 0.0;
    }
    double twist_mean() const {
        return route_pairs ? static_cast<double>(twist_total) / static_cast<double>(route_pairs) : 0.0;
    }
    double phases_mean() const {
        return route_pairs ? static_cast<double>(phase_total) / static_cast<double>(route_pairs) : 0.0;
    }
    std::optional<double> drop_mean() const {
        if (phase_total == 0) return std::nullopt;
        return static_cast<double>(drop_total) / static_cast<double>(phase_total);
    }
};

namespace detail {

inline SweepRecord run_cell(const SweepConfig& cfg, int n, CouplingPolicy policy,
                            std::uint64_t seed) {
    SweepRecord rec;
    rec.n = n;
    rec.policy = policy;
    rec.seed = seed;

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<TwistedCube> graph;
    try {
        BuildOptions opts;
        opts.threads = cfg.threads;
        graph = build(n, policy, seed, opts);
    } catch (const MemoryBudgetError& e) {
        rec.skip_reason = e.what();
        return rec;
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.build_s = std::chrono::duration<double>(t1 - t0).count();

    if (n <= cfg.exact_cap) {
        ExactDiameterOptions opts;
        opts.cap = cfg.exact_cap;
        opts.threads = cfg.threads;
        const int d = exact_diameter(*graph, opts);
        rec.diam_exact = d;
        rec.diam_lower = d;
        rec.diam_upper = d;
        rec.method = DiameterMethod::AllPairs;
    } else {
        SampleOptions opts;
        opts.num_sources = cfg.sources;
        opts.num_pairs = cfg.pairs;
        opts.seed = derive_stream(seed, 0xd143u, static_cast<std::uint64_t>(n));
        opts.threads = cfg.threads;
        const DiameterReport r = diameter_bounds_sampled(*graph, opts);
        rec.diam_lower = r.lower_bound;
        rec.diam_upper = r.upper_bound;
        rec.method = r.method;
    }

    RouterParams params = RouterParams::defaults_for(n);
    if (cfg.router_t) params.t = *cfg.router_t;
    if (cfg.router_n0) params.n0 = std::min(*cfg.router_n0, n + 1);

    SplitMix64 rng(derive_stream(seed, 0x40feu, static_cast<std::uint64_t>(n)));
    const std::uint64_t nv = graph->num_vertices();
    rec.route_pairs = cfg.pairs;
    for (std::uint64_t i = 0; i < cfg.pairs; ++i) {
        const auto u = static_cast<VertexLabel>(rng.bounded(nv));
        auto v = static_cast<VertexLabel>(rng.bounded(nv));
        if (nv > 1) {
            while (v == u) v = static_cast<VertexLabel>(rng.bounded(nv));
        }
        const Path gpath = greedy_route(*graph, u, v);
        rec.greedy_total += gpath.length();
        rec.greedy_max = std::max(rec.greedy_max, static_cast<int>(gpath.length()));
        const Path tpath = twist_route(*graph, u, v, params);
        rec.twist_total += tpath.length();
        rec.twist_max = std::max(rec.twist_max, static_cast<int>(tpath.length()));
        rec.phase_total += tpath.phases;
        for (std::size_t j = 0; j + 1 < tpath.alpha_trace.size(); ++j) {
            rec.drop_total +=
                static_cast<std::uint64_t>(tpath.alpha_trace[j] - tpath.alpha_trace[j + 1]);
        }
    }
    const auto t2 = std::chrono::steady_clock::now();
    rec.measure_s = std::chrono::duration<double>(t2 - t1).count();

    if (n >= 2) {
        const int d = rec.diam_exact ? *rec.diam_exact : *rec.diam_lower;
        rec.ratio = diameter_ratio(d, n);
    }
    return rec;
}

inline std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

}  // namespace detail

inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<SweepRecord> records;
    records.reserve(cfg.n_values.size() * cfg.policies.size() *
                    static_cast<std::size_t>(cfg.seeds_per_cell));
    for (const int n : cfg.n_values) {
        for (const CouplingPolicy policy : cfg.policies) {
            for (int s = 0; s < cfg.seeds_per_cell; ++s) {
                records.push_back(
                    detail::run_cell(cfg, n, policy, cfg.seed_base + static_cast<std::uint64_t>(s)));
            }
        }
    }
    return records;
}

inline constexpr const char* kCsvHeader =
    "n,policy,seed,diam_exact,diam_lower,diam_upper,method,greedy_mean,greedy_max,twist_mean,"
    "twist_max,phases_mean,drop_mean,ratio,build_s,measure_s";

// Fixed column order; empty string for absent optionals.
inline void emit_csv(const std::vector<SweepRecord>& records, const SweepConfig& cfg,
                     std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const SweepRecord& r : records) {
        out << r.n << ',' << policy_name(r.policy) << ',' << r.seed << ',';
        if (r.skipped()) {
            out << ",,,,,,,,,,,,\n";
            continue;
        }
        if (r.diam_exact) out << *r.diam_exact;
        out << ',';
        if (r.diam_lower) out << *r.diam_lower;
        out << ',';
        if (r.diam_upper) out << *r.diam_upper;
        out << ',';
        if (r.method) out << method_name(*r.method);
        out << ',';
        out << detail::fixed(r.greedy_mean(), 4) << ',' << r.greedy_max << ','
            << detail::fixed(r.twist_mean(), 4) << ',' << r.twist_max << ','
            << detail::fixed(r.phases_mean(), 4) << ',';
        if (const auto dm = r.drop_mean()) out << detail::fixed(*dm, 4);
        out << ',';
        if (r.ratio) out << detail::fixed(*r.ratio, 6);
        out << ',';
        if (cfg.record_timing) out << detail::fixed(r.build_s, 3);
        out << ',';
        if (cfg.record_timing) out << detail::fixed(r.measure_s, 3);
        out << '\n';
    }
}

inline void emit_json(const std::vector<SweepRecord>& records, const SweepConfig& cfg,
                      std::ostream& out) {
    out << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SweepRecord& r = records[i];
        out << "  {\"n\":" << r.n << ",\"policy\":\"" << policy_name(r.policy)
            << "\",\"seed\":" << r.seed;
        if (r.skipped()) {
            std::string escaped;
            for (char c : r.skip_reason) {
                if (c == '"' || c == '\\') escaped.push_back('\\');
                escaped.push_back(c);
            }
            out << ",\"skipped\":\"" << escaped << "\"";
        } else {
            if (r.diam_exact) out << ",\"diam_exact\":" << *r.diam_exact;
            if (r.diam_lower) out << ",\"diam_lower\":" << *r.diam_lower;
            if (r.diam_upper) out << ",\"diam_upper\":" << *r.diam_upper;
            if (r.method) out << ",\"method\":\"" << method_name(*r.method) << "\"";
            out << ",\"greedy_mean\":" << detail::fixed(r.greedy_mean(), 4)
                << ",\"greedy_max\":" << r.greedy_max
                << ",\"twist_mean\":" << detail::fixed(r.twist_mean(), 4)
                << ",\"twist_max\":" << r.twist_max
                << ",\"phases_mean\":" << detail::fixed(r.phases_mean(), 4);
            if (const auto dm = r.drop_mean()) out << ",\"drop_mean\":" << detail::fixed(*dm, 4);
            if (r.ratio) out << ",\"ratio\":" << detail::fixed(*r.ratio, 6);
            if (cfg.record_timing) {
                out << ",\"build_s\":" << detail::fixed(r.build_s, 3)
                    << ",\"measure_s\":" << detail::fixed(r.measure_s, 3);
            }
        }
        out << (i + 1 < records.size() ? "},\n" : "}\n");
    }
    out << "]\n";
}

inline void emit(const std::vector<SweepRecord>& records, const SweepConfig& cfg,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (cfg.format == "json") {
        emit_json(records, cfg, out);
    } else {
        emit_csv(records, cfg, out);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---- config file parsing ------------------------------------------------
// Flat key = value lines; '#' starts a comment. Lists are comma separated;
// integer lists also accept a..b ranges.

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline long long parse_int(const std::string& s, const std::string& field) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("sweep config: field '" + field + "': bad integer '" + s + "'");
    }
}

}  // namespace detail

inline std::vector<int> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<int> out;
    for (const std::string& item : detail::split_list(text)) {
        const std::size_t dots = item.find("..");
        if (dots != std::string::npos) {
            const int a = static_cast<int>(detail::parse_int(item.substr(0, dots), field));
            const int b = static_cast<int>(detail::parse_int(item.substr(dots + 2), field));
            if (b < a) throw std::invalid_argument("sweep config: field '" + field +
                                                   "': empty range '" + item + "'");
            for (int v = a; v <= b; ++v) out.push_back(v);
        } else {
            out.push_back(static_cast<int>(detail::parse_int(item, field)));
        }
    }
    return out;
}

inline std::vector<CouplingPolicy> parse_policy_list(const std::string& text) {
    std::vector<CouplingPolicy> out;
    for (const std::string& item : detail::split_list(text)) out.push_back(parse_policy(item));
    return out;
}

// Applies one key to the config; shared by the file parser and CLI overrides.
inline void apply_config_key(SweepConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n") {
        cfg.n_values = parse_int_list(value, key);
    } else if (key == "policies") {
        cfg.policies = parse_policy_list(value);
    } else if (key == "seeds") {
        cfg.seeds_per_cell = static_cast<int>(detail::parse_int(value, key));
    } else if (key == "seed_base") {
        cfg.seed_base = static_cast<std::uint64_t>(detail::parse_int(value, key));
    } else if (key == "exact_cap") {
        cfg.exact_cap = static_cast<int>(detail::parse_int(value, key));
    } else if (key == "sources") {
        cfg.sources = static_cast<std::uint64_t>(detail::parse_int(value, key));
    } else if (key == "pairs") {
        cfg.pairs = static_cast<std::uint64_t>(detail::parse_int(value, key));
    } else if (key == "t") {
        if (value == "auto") cfg.router_t.reset();
        else cfg.router_t = static_cast<int>(detail::parse_int(value, key));
    } else if (key == "n0") {
        if (value == "auto") cfg.router_n0.reset();
        else cfg.router_n0 = static_cast<int>(detail::parse_int(value, key));
    } else if (key == "output") {
        cfg.output = value;
    } else if (key == "format") {
        cfg.format = value;
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(detail::parse_int(value, key));
    } else if (key == "timing") {
        if (value == "real") cfg.record_timing = true;
        else if (value == "none") cfg.record_timing = false;
        else throw std::invalid_argument("sweep config: field 'timing': expected real|none");
    } else {
        throw std::invalid_argument("sweep config: unknown key '" + key + "'");
    }
}

inline SweepConfig parse_config_text(const std::string& text, SweepConfig base = {}) {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("sweep config: expected key = value, got '" + line + "'");
        }
        apply_config_key(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return base;
}

inline SweepConfig parse_config_file(const std::string& path, SweepConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), std::move(base));
}

}  // namespace twistcube
