// twistcube: build random twisted hypercubes, route on them, measure
// diameters, run verification checks, and drive experiment sweeps.
//
// Exit codes: 0 success, 1 usage error or failed check, 2 partial sweep,
// 3 resource rejection (memory budget, exact-diameter cap).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "twistcube/json_io.hpp"
#include "twistcube/twistcube.hpp"

namespace tc = twistcube;
using tc::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitResource = 3;

struct GraphArgs {
    std::string file;
    int n = 0;
    std::string policy = "duplicube";
    std::uint64_t seed = 1;
    unsigned threads = 0;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--graph-file", file, "load a TWC1 graph file");
        cmd->add_option("--n", n, "dimension (build in memory instead of loading)");
        cmd->add_option("--policy", policy, "independent|duplicube|identity")
            ->default_str("duplicube");
        cmd->add_option("--seed", seed, "master seed")->default_str("1");
        cmd->add_option("--threads", threads, "worker threads (0 = auto)");
    }

    tc::TwistedCube open() const {
        if (!file.empty() && n > 0) {
            throw std::invalid_argument("give either --graph-file or --n, not both");
        }
        if (!file.empty()) return tc::load_file(file);
        if (n == 0) throw std::invalid_argument("a graph is needed: give --graph-file or --n");
        tc::BuildOptions opts;
        opts.threads = threads;
        return tc::build(n, tc::parse_policy(policy), seed, opts);
    }
};

void print_path_human(const tc::TwistedCube& g, const tc::Path& p, bool valid) {
    std::printf("length %zu, valid %s\n", p.length(), valid ? "true" : "false");
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        std::printf("  %u (%s)", p.vertices[i], tc::to_binary(p.vertices[i], g.dimension()).c_str());
        if (i < p.levels.size()) std::printf("  --%d-->", p.levels[i]);
        std::printf("\n");
    }
    if (p.phases > 0) {
        std::printf("phases %zu, alpha trace:", p.phases);
        for (int a : p.alpha_trace) std::printf(" %d", a);
        std::printf("\n");
    }
}

int cmd_generate(const GraphArgs& args, const std::string& out_path) {
    tc::BuildOptions opts;
    opts.threads = args.threads;
    const tc::TwistedCube g = tc::build(args.n, tc::parse_policy(args.policy), args.seed, opts);
    tc::save_file(g, out_path);
    const auto bytes = std::filesystem::file_size(out_path);
    ordered_json j;
    j["n"] = g.dimension();
    j["policy"] = tc::policy_name(g.coupling());
    j["seed"] = g.seed();
    j["bytes"] = static_cast<std::uint64_t>(bytes);
    j["path"] = out_path;
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_route(const GraphArgs& args, const std::string& from, const std::string& to,
              const std::string& algo, std::optional<int> t, std::optional<int> n0, bool json) {
    const tc::TwistedCube g = args.open();
    const tc::VertexLabel u = tc::parse_vertex(from);
    const tc::VertexLabel v = tc::parse_vertex(to);
    tc::require_label(u, g.dimension(), "--from");
    tc::require_label(v, g.dimension(), "--to");

    tc::RouterParams params = tc::RouterParams::defaults_for(g.dimension());
    if (t) params.t = *t;
    if (n0) params.n0 = *n0;

    tc::Path p;
    if (algo == "greedy") {
        p = tc::greedy_route(g, u, v);
    } else if (algo == "twist") {
        p = tc::twist_route(g, u, v, params);
    } else {
        throw std::invalid_argument("--algo must be greedy or twist");
    }
    const bool valid = tc::validate_path(g, p, u, v);
    if (json) {
        ordered_json j;
        j["algo"] = algo;
        j["from"] = tc::label_json(u, g.dimension());
        j["to"] = tc::label_json(v, g.dimension());
        j["valid"] = valid;
        ordered_json pj = tc::to_json(p, g.dimension());
        for (auto& [key, value] : pj.items()) j[key] = value;
        if (algo == "twist") {
            j["t"] = params.t;
            j["n0"] = params.n0;
        }
        std::cout << j.dump() << "\n";
    } else {
        print_path_human(g, p, valid);
    }
    return valid ? kExitOk : kExitUsage;
}

int cmd_diameter(const GraphArgs& args, bool exact, bool sampled, int cap,
                 std::uint64_t sources, std::uint64_t pairs, std::uint64_t sample_seed,
                 bool json) {
    const tc::TwistedCube g = args.open();
    tc::DiameterReport report;
    const bool use_exact = exact || (!sampled && g.dimension() <= cap);
    if (use_exact) {
        tc::ExactDiameterOptions opts;
        opts.cap = cap;
        opts.threads = args.threads;
        report = tc::measure_diameter_exact(g, opts);
    } else {
        tc::SampleOptions opts;
        opts.num_sources = sources;
        opts.num_pairs = pairs;
        opts.seed = sample_seed;
        opts.threads = args.threads;
        report = tc::diameter_bounds_sampled(g, opts);
    }
    if (json) {
        std::cout << tc::to_json(report).dump() << "\n";
    } else {
        if (report.exact) {
            std::printf("diameter %d (exact, all-pairs over %llu vertices, %.3fs)\n", *report.exact,
                        static_cast<unsigned long long>(report.samples), report.wall_time_s);
        } else {
            std::printf("diameter in [%d, %d] (sampled; upper side is a route-length statistic, "
                        "%llu samples, %.3fs)\n",
                        report.lower_bound, report.upper_bound,
                        static_cast<unsigned long long>(report.samples), report.wall_time_s);
        }
    }
    return kExitOk;
}

int cmd_verify(const GraphArgs& args, const std::string& suite, std::optional<int> t_opt,
               std::optional<int> k_opt, std::uint64_t pairs, int centers,
               std::uint64_t sample_seed, bool json) {
    const tc::TwistedCube g = args.open();
    const int n = g.dimension();
    std::vector<tc::CheckReport> reports;
    std::optional<tc::QuasirandomnessReport> quasi;

    const bool all = suite == "all";
    if (all || suite == "involution") {
        reports.push_back(tc::check_matching_involution(g, 65536, sample_seed, args.threads));
    }
    if (all || suite == "balls") {
        const int t_max = t_opt ? *t_opt : std::min(4, n);
        reports.push_back(tc::check_ball_lower_bound(g, t_max, 1024, sample_seed, args.threads));
    }
    if (all || suite == "injectivity") {
        const int t = t_opt ? *t_opt : std::min(3, n);
        tc::SplitMix64 rng(tc::derive_stream(sample_seed, 0xce47u));
        for (int c = 0; c < centers; ++c) {
            const auto v = static_cast<tc::VertexLabel>(rng.bounded(g.num_vertices()));
            reports.push_back(tc::check_injectivity(g, v, t));
        }
    }
    if (all || suite == "subcube") {
        reports.push_back(tc::check_subcube_counts(g, 256, sample_seed, args.threads));
    }
    if (all || suite == "quasi") {
        const int t = t_opt ? *t_opt : 3;
        const int k = k_opt ? *k_opt : std::max(1, n - 2);
        quasi = tc::estimate_quasirandomness(g, k, t, pairs, sample_seed, args.threads);
    }
    if (reports.empty() && !quasi) {
        throw std::invalid_argument("--suite must be one of all|balls|injectivity|subcube|"
                                    "involution|quasi");
    }

    bool all_passed = true;
    for (const auto& r : reports) all_passed = all_passed && r.passed();

    if (json) {
        ordered_json j;
        j["passed"] = all_passed;
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(tc::to_json(r));
        j["reports"] = std::move(arr);
        if (quasi) j["quasirandomness"] = tc::to_json(*quasi);
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& r : reports) {
            std::printf("%-18s %-10s checked %-10llu %s\n", r.name.c_str(), r.scope.c_str(),
                        static_cast<unsigned long long>(r.checked),
                        r.passed() ? "passed" : "FAILED");
            for (const auto& w : r.failures) std::printf("    %s\n", w.c_str());
        }
        if (quasi) {
            std::printf("quasirandomness    k=%d t=%d drop=%d: failure frequency %.6f over %llu "
                        "pairs (mean per-pair bound %.6g, mean ball %.1f)\n",
                        quasi->k, quasi->t, quasi->drop, quasi->failure_frequency,
                        static_cast<unsigned long long>(quasi->pairs), quasi->mean_pair_bound,
                        quasi->mean_ball);
            if (quasi->regime_warning) {
                std::fprintf(stderr, "note: k=%d is outside the regime the drop schedule targets; "
                                     "frequencies are reported, not asserted\n",
                             quasi->k);
            }
        }
    }
    return all_passed ? kExitOk : kExitUsage;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::pair<std::string, std::string>>& overrides,
              bool json) {
    tc::SweepConfig cfg;
    if (!config_path.empty()) cfg = tc::parse_config_file(config_path);
    for (const auto& [key, value] : overrides) tc::apply_config_key(cfg, key, value);
    cfg.validate();

    const std::vector<tc::SweepRecord> records = tc::run_sweep(cfg);
    tc::emit(records, cfg, cfg.output);

    std::size_t skipped = 0;
    for (const auto& r : records) {
        if (r.skipped()) {
            ++skipped;
            std::fprintf(stderr, "skipped n=%d policy=%s seed=%llu: %s\n", r.n,
                         tc::policy_name(r.policy), static_cast<unsigned long long>(r.seed),
                         r.skip_reason.c_str());
        }
    }
    if (json) {
        ordered_json j;
        j["rows"] = records.size();
        j["skipped"] = skipped;
        j["output"] = cfg.output;
        j["format"] = cfg.format;
        std::cout << j.dump() << "\n";
    } else {
        std::printf("wrote %zu rows (%zu skipped) to %s\n", records.size(), skipped,
                    cfg.output.c_str());
    }
    return skipped == 0 ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random twisted hypercubes: construction, routing, diameters, checks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "build a graph and write a TWC1 file");
    GraphArgs gen_args;
    std::string gen_out;
    gen->add_option("--n", gen_args.n, "dimension")->required();
    gen->add_option("--policy", gen_args.policy, "independent|duplicube|identity");
    gen->add_option("--seed", gen_args.seed, "master seed");
    gen->add_option("--threads", gen_args.threads, "worker threads (0 = auto)");
    gen->add_option("--out", gen_out, "output path")->required();
    bool gen_json = false;  // the summary is always one JSON line
    gen->add_flag("--json", gen_json, "emit one JSON document (default behavior)");

    // route
    auto* route = app.add_subcommand("route", "route between two vertices");
    GraphArgs route_args;
    route_args.add_options(route);
    std::string route_from, route_to, route_algo = "greedy";
    std::optional<int> route_t, route_n0;
    bool route_json = false;
    route->add_option("--from", route_from, "source label (decimal or 0b binary)")->required();
    route->add_option("--to", route_to, "target label")->required();
    route->add_option("--algo", route_algo, "greedy|twist")->default_str("greedy");
    route->add_option("--t", route_t, "twist ball radius");
    route->add_option("--n0", route_n0, "twist greedy-switch threshold");
    route->add_flag("--json", route_json, "emit one JSON document");

    // diameter
    auto* diam = app.add_subcommand("diameter", "exact or sampled diameter");
    GraphArgs diam_args;
    diam_args.add_options(diam);
    bool diam_exact = false, diam_sampled = false, diam_json = false;
    int diam_cap = 16;
    std::uint64_t diam_sources = 16, diam_pairs = 256, diam_seed = 1;
    diam->add_flag("--exact", diam_exact, "force the all-pairs sweep");
    diam->add_flag("--sampled", diam_sampled, "force sampled bounds");
    diam->add_option("--exact-cap", diam_cap, "largest n for the all-pairs sweep");
    diam->add_option("--sources", diam_sources, "sampled BFS sources");
    diam->add_option("--pairs", diam_pairs, "sampled routed pairs");
    diam->add_option("--sample-seed", diam_seed, "sampling stream seed");
    diam->add_flag("--json", diam_json, "emit one JSON document");

    // verify
    auto* verify = app.add_subcommand("verify", "run verification checks");
    GraphArgs verify_args;
    verify_args.add_options(verify);
    std::string verify_suite = "all";
    std::optional<int> verify_t, verify_k;
    std::uint64_t verify_pairs = 1000, verify_seed = 1;
    int verify_centers = 5;
    bool verify_json = false;
    verify->add_option("--suite", verify_suite, "all|balls|injectivity|subcube|involution|quasi");
    verify->add_option("--t", verify_t, "radius / sequence length bound");
    verify->add_option("--k", verify_k, "level for the quasirandomness estimate");
    verify->add_option("--pairs", verify_pairs, "pairs for the quasirandomness estimate");
    verify->add_option("--centers", verify_centers, "random centers for injectivity");
    verify->add_option("--sample-seed", verify_seed, "sampling stream seed");
    verify->add_flag("--json", verify_json, "emit one JSON document");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a config-driven experiment sweep");
    std::string sweep_config;
    bool sweep_json = false;
    std::string ov_n, ov_policies, ov_seeds, ov_seed_base, ov_cap, ov_sources, ov_pairs, ov_t,
        ov_n0, ov_output, ov_format, ov_threads, ov_timing;
    sweep->add_option("--config", sweep_config, "key = value config file");
    sweep->add_option("--n", ov_n, "override: n list (e.g. 4..12,16)");
    sweep->add_option("--policies", ov_policies, "override: policy list");
    sweep->add_option("--seeds", ov_seeds, "override: seeds per cell");
    sweep->add_option("--seed-base", ov_seed_base, "override: first seed");
    sweep->add_option("--exact-cap", ov_cap, "override: exact diameter cap");
    sweep->add_option("--sources", ov_sources, "override: sampled sources");
    sweep->add_option("--pairs", ov_pairs, "override: routed pairs per cell");
    sweep->add_option("--t", ov_t, "override: router t (or auto)");
    sweep->add_option("--n0", ov_n0, "override: router n0 (or auto)");
    sweep->add_option("--output", ov_output, "override: output path");
    sweep->add_option("--format", ov_format, "override: csv|json");
    sweep->add_option("--threads", ov_threads, "override: worker threads");
    sweep->add_option("--timing", ov_timing, "override: real|none wall-time columns");
    sweep->add_flag("--json", sweep_json, "emit one JSON summary document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_args, gen_out);
        if (route->parsed()) {
            return cmd_route(route_args, route_from, route_to, route_algo, route_t, route_n0,
                             route_json);
        }
        if (diam->parsed()) {
            return cmd_diameter(diam_args, diam_exact, diam_sampled, diam_cap, diam_sources,
                                diam_pairs, diam_seed, diam_json);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_args, verify_suite, verify_t, verify_k, verify_pairs,
                              verify_centers, verify_seed, verify_json);
        }
        if (sweep->parsed()) {
            std::vector<std::pair<std::string, std::string>> overrides;
            auto push = [&overrides](const char* key, const std::string& value) {
                if (!value.empty()) overrides.emplace_back(key, value);
            };
            push("n", ov_n);
            push("policies", ov_policies);
            push("seeds", ov_seeds);
            push("seed_base", ov_seed_base);
            push("exact_cap", ov_cap);
            push("sources", ov_sources);
            push("pairs", ov_pairs);
            push("t", ov_t);
            push("n0", ov_n0);
            push("output", ov_output);
            push("format", ov_format);
            push("threads", ov_threads);
            push("timing", ov_timing);
            return cmd_sweep(sweep_config, overrides, sweep_json);
        }
    } catch (const tc::ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResource;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
