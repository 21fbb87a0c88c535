#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kint/control.hpp"
#include "kint/digraph.hpp"
#include "kint/error.hpp"
#include "kint/json_util.hpp"
#include "kint/moves.hpp"
#include "kint/objective.hpp"
#include "kint/permutation.hpp"
#include "kint/search.hpp"
#include "kint/value.hpp"
#include "kint/version.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out;
    std::string format; // empty = auto: json when --out is given, text otherwise
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "Seed for any randomized behavior (echoed in output)");
    cmd->add_option("--out", opts.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
}

std::string effective_format(const CommonOpts& opts) {
    if (!opts.format.empty()) return opts.format;
    return opts.out.empty() ? "text" : "json";
}

json make_meta(const std::string& command, const CommonOpts& opts, json options) {
    return {{"tool", kint::kToolName},     {"version", kint::kToolVersion},
            {"command", command},          {"seed", opts.seed},
            {"timestamp", kint::iso_timestamp_utc()}, {"options", std::move(options)}};
}

void emit(const CommonOpts& opts, const json& doc, const std::string& text) {
    const std::string body = effective_format(opts) == "json" ? doc.dump(2) + "\n" : text;
    if (opts.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(opts.out);
    if (!out) kint::fail(kint::ErrorCode::io_error, "cannot open " + opts.out);
    out << body;
    if (!out.good()) kint::fail(kint::ErrorCode::io_error, "write failed for " + opts.out);
}

std::string text_header(const std::string& command, const CommonOpts& opts) {
    std::ostringstream os;
    os << kint::kToolName << ' ' << kint::kToolVersion << " " << command << " (seed "
       << opts.seed << ")\n";
    return os.str();
}

// Builtin objective grammar: table1 | inversion:<n> | search-distance:<n>:<k>[:<target>]
kint::Objective builtin_objective(const std::string& name, int cap) {
    if (name == "table1") return kint::table1_objective();
    std::vector<std::string> parts;
    std::string token;
    std::istringstream is(name);
    while (std::getline(is, token, ':')) parts.push_back(token);
    try {
        if (parts.size() == 2 && parts[0] == "inversion")
            return kint::Objective::inversion(std::stoi(parts[1]));
        if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "search-distance") {
            const int n = std::stoi(parts[1]);
            const int k = std::stoi(parts[2]);
            kint::Permutation target = parts.size() == 4 ? kint::parse_permutation(parts[3])
                                                         : kint::Permutation::identity(n);
            return kint::build_search_distance_objective(n, k, target, cap);
        }
    } catch (const std::logic_error&) { // stoi
        kint::fail(kint::ErrorCode::parse_error, "bad number in builtin '" + name + "'");
    }
    kint::fail(kint::ErrorCode::parse_error,
               "unknown builtin '" + name +
                   "' (expected table1, inversion:<n>, or search-distance:<n>:<k>[:<target>])");
}

kint::Objective resolve_objective(const std::string& path, const std::string& builtin, int cap) {
    if (!path.empty() && !builtin.empty())
        kint::fail(kint::ErrorCode::invalid_params, "--objective and --builtin are exclusive");
    if (!path.empty()) return kint::load_objective(path);
    if (!builtin.empty()) return builtin_objective(builtin, cap);
    kint::fail(kint::ErrorCode::missing_objective, "give --objective <file> or --builtin <name>");
}

int run_table(const CommonOpts& opts, int n, int k, const std::string& target_str,
              bool paper_order, int cap) {
    kint::Permutation target =
        target_str.empty() ? kint::Permutation::identity(n) : kint::parse_permutation(target_str);
    if (paper_order && n != 4)
        kint::fail(kint::ErrorCode::invalid_params, "--paper-order applies to n=4 only");
    kint::Objective f = kint::build_search_distance_objective(n, k, target, cap);

    const std::uint64_t total = kint::factorial(n);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> order; // display row, rank
    for (std::uint64_t r = 0; r < total; ++r)
        order.emplace_back(paper_order ? kint::figure_number(n, r) : r + 1, r);
    if (paper_order) std::sort(order.begin(), order.end());

    json rows = json::array();
    std::ostringstream text;
    text << text_header("table", opts);
    text << "g_" << k << " distance to " << target.compact() << " over n=" << n << "\n";
    for (const auto& [row, rank] : order) {
        const kint::Permutation p = kint::lex_unrank(n, rank);
        const kint::Value v = f.evaluate(p);
        rows.push_back({{"row", row}, {"permutation", p.compact()}, {"value", kint::value_to_json(v)}});
        text << row << ": " << p.compact() << " f=" << v.to_string() << "\n";
    }
    json doc = {{"meta", make_meta("table", opts,
                                   {{"n", n},
                                    {"k", k},
                                    {"target", target.compact()},
                                    {"order", paper_order ? "paper" : "lex"},
                                    {"cap", cap}})},
                {"n", n},
                {"k", k},
                {"target", target.compact()},
                {"rows", rows}};
    emit(opts, doc, text.str());
    return 0;
}

int run_landscape(const CommonOpts& opts, int n, int k, const std::string& mode_str,
                  const std::string& objective_path, const std::string& builtin,
                  const std::string& target_str, int cap) {
    const kint::DigraphMode mode = kint::digraph_mode_from_string(mode_str);
    json options = {{"n", n},     {"k", k},
                    {"mode", mode_str}, {"objective", objective_path},
                    {"builtin", builtin}, {"cap", cap}};

    if (mode == kint::DigraphMode::moves) {
        if (n <= 0) kint::fail(kint::ErrorCode::invalid_params, "--n is required in moves mode");
        kint::Permutation target = target_str.empty() ? kint::Permutation::identity(n)
                                                      : kint::parse_permutation(target_str);
        kint::OperationalDigraph d = kint::build_digraph(nullptr, n, k, mode, cap);
        kint::LevelStructure ls = kint::compute_levels(n, k, target, cap);
        json level_sizes = json::array();
        for (const auto& level : ls.levels) level_sizes.push_back(level.size());
        json doc = {{"meta", make_meta("landscape", opts, options)},
                    {"n", n},
                    {"k", k},
                    {"mode", "moves"},
                    {"target", target.compact()},
                    {"nodes", d.node_count()},
                    {"edges", d.arc_count() / 2},
                    {"level_count", ls.level_count()},
                    {"max_distance", ls.max_distance},
                    {"level_sizes", level_sizes}};
        std::ostringstream text;
        text << text_header("landscape", opts);
        text << "moves graph n=" << n << " k=" << k << ": " << d.node_count() << " nodes, "
             << d.arc_count() / 2 << " edges\n";
        text << "levels from " << target.compact() << ": " << ls.level_count()
             << " (max distance " << ls.max_distance << ")\n";
        text << "level sizes:";
        for (const auto& level : ls.levels) text << ' ' << level.size();
        text << "\n";
        emit(opts, doc, text.str());
        return 0;
    }

    kint::Objective f = resolve_objective(objective_path, builtin, cap);
    if (n > 0 && n != f.n())
        kint::fail(kint::ErrorCode::arity_mismatch,
                   "--n " + std::to_string(n) + " does not match objective n=" +
                       std::to_string(f.n()));
    kint::LandscapeReport report = kint::analyze(f, f.n(), k, mode, cap);
    json doc = {{"meta", make_meta("landscape", opts, options)},
                {"report", kint::report_to_json(report)}};
    std::ostringstream text;
    text << text_header("landscape", opts);
    text << to_string(report.mode) << " digraph for " << report.objective_id
         << ", k=" << report.k << "\n";
    text << "global optima: " << report.global_optima.size() << ", reach "
         << report.reach_set.size() << "/" << kint::factorial(report.n) << " (fraction "
         << report.reach_fraction.to_string() << ")\n";
    text << "local optima (k=" << report.k << "): " << report.local_optima.size() << "\n";
    text << "move-graph levels: " << report.level_count
         << ", max shortest path to optimum: " << report.max_shortest_path_to_optimum << "\n";
    text << "every point reaches an optimum: " << (report.property1 ? "yes" : "no")
         << "; path bound " << report.property2_bound << " respected: "
         << (report.property2_within_bound ? "yes" : "no") << "\n";
    text << "nests into k+1: " << (report.nesting_verified ? "yes" : "no") << "\n";
    emit(opts, doc, text.str());
    return 0;
}

int run_search(const CommonOpts& opts, int n, const std::string& objective_path,
               const std::string& builtin, const std::string& kind_str, int k, int k_min,
               int k_max, const std::string& pivot_str, const std::vector<std::string>& starts,
               std::uint64_t random_starts, std::uint64_t step_limit, std::uint64_t aside_budget,
               const std::string& lower_bound_str, bool include_steps, int cap) {
    if (k > 0 && (k_min > 0 || k_max > 0))
        kint::fail(kint::ErrorCode::invalid_params, "--k conflicts with --k-min/--k-max");
    if (n > 0) { // validate window sizes before touching the objective
        for (int kk : {k, k_min, k_max})
            if (kk != 0 && (kk < 2 || kk > n))
                kint::fail(kint::ErrorCode::invalid_k, "window size " + std::to_string(kk) +
                                                           " invalid for n=" + std::to_string(n));
    }
    kint::Objective f = resolve_objective(objective_path, builtin, cap);
    if (n > 0 && n != f.n())
        kint::fail(kint::ErrorCode::arity_mismatch,
                   "--n " + std::to_string(n) + " does not match objective n=" +
                       std::to_string(f.n()));

    kint::StrategyConfig cfg;
    cfg.kind = kint::trajectory_kind_from_string(kind_str);
    cfg.pivot = kint::pivot_from_string(pivot_str);
    if (k > 0)
        cfg.schedule = kint::KSchedule::fixed(k);
    else if (k_min > 0 || k_max > 0)
        cfg.schedule = kint::KSchedule::adaptive_range(k_min > 0 ? k_min : 2,
                                                       k_max > 0 ? k_max : f.n());
    else
        cfg.schedule = kint::KSchedule::fixed(2);
    for (const auto& s : starts) cfg.starts.push_back(kint::parse_permutation(s));
    cfg.random_start_count = cfg.starts.empty() && random_starts == 0 ? 1 : random_starts;
    cfg.seed = opts.seed;
    cfg.step_limit = step_limit;
    cfg.aside_budget = aside_budget;

    std::optional<kint::Value> lower_bound;
    if (!lower_bound_str.empty()) lower_bound = kint::Value::parse(lower_bound_str);
    std::optional<kint::Value> optimum = kint::resolve_optimum(f, lower_bound, cap);

    kint::MultiStartResult result = kint::run_multistart(f, cfg, optimum);
    json doc = {{"meta", make_meta("search", opts,
                                   {{"objective", f.id()},
                                    {"config", kint::config_to_json(cfg)},
                                    {"optimum_value", optimum ? kint::value_to_json(*optimum)
                                                              : json(nullptr)},
                                    {"cap", cap}})},
                {"result", kint::multistart_to_json(result, include_steps)}};
    std::ostringstream text;
    text << text_header("search", opts);
    text << f.id() << " kind=" << to_string(cfg.kind) << " schedule=" << cfg.schedule.to_string()
         << " pivot=" << to_string(cfg.pivot) << "\n";
    for (const auto& t : result.trajectories)
        text << "  " << t.start.compact() << " -> " << t.final_point.compact()
             << " f=" << t.final_value.to_string() << " [" << to_string(t.status) << ", "
             << t.forward_count << "f/" << t.aside_count << "a/" << t.backward_count << "b]\n";
    text << "best " << result.best_point.compact() << " f=" << result.best_value.to_string()
         << "; optimum reached on " << result.success_count << "/"
         << result.trajectories.size() << " lines\n";
    emit(opts, doc, text.str());
    return 0;
}

int run_probe(const CommonOpts& opts, const std::string& objective_path,
              const std::string& builtin, int k_min, int k_max, std::uint64_t samples,
              bool exhaustive, bool execute, const std::string& repo,
              const std::string& plateau_threshold, const std::string& lo_threshold, int cap) {
    kint::Objective f = resolve_objective(objective_path, builtin, cap);
    if (samples > 0 && exhaustive)
        kint::fail(kint::ErrorCode::invalid_params, "--samples conflicts with --exhaustive");
    std::optional<std::uint64_t> sample_count;
    if (samples > 0) sample_count = samples;

    const int hi = k_max > 0 ? k_max : f.n();
    kint::ProbeReport probe =
        kint::probe_instance(f, f.n(), k_min, hi, sample_count, opts.seed, cap);

    kint::SelectionThresholds thresholds;
    thresholds.plateau_rate = kint::Value::parse(plateau_threshold);
    thresholds.lo_fraction = kint::Value::parse(lo_threshold);
    kint::StrategyConfig cfg = kint::select_strategy(probe, thresholds);

    json doc = {{"meta", make_meta("probe", opts,
                                   {{"objective", f.id()},
                                    {"k_min", k_min},
                                    {"k_max", hi},
                                    {"samples", samples},
                                    {"exhaustive", sample_count ? false : true},
                                    {"plateau_threshold", plateau_threshold},
                                    {"lo_threshold", lo_threshold},
                                    {"cap", cap}})},
                {"probe", kint::probe_to_json(probe)},
                {"selected", kint::config_to_json(cfg)}};
    std::ostringstream text;
    text << text_header("probe", opts);
    text << f.id() << " over " << probe.sampled << (probe.exhaustive ? " points (exhaustive)" : " sampled points") << "\n";
    for (const auto& s : probe.per_k)
        text << "  k=" << s.k << ": local-optimum fraction " << s.lo_fraction.to_string()
             << ", mean improving degree " << s.mean_improving_degree.to_string()
             << ", plateau rate " << s.plateau_rate.to_string() << "\n";
    text << "selected: kind=" << to_string(cfg.kind) << " schedule=" << cfg.schedule.to_string()
         << " pivot=" << to_string(cfg.pivot) << " starts=" << cfg.random_start_count << "\n";

    if (execute) {
        kint::RunRecord record = kint::execute_plan(f, cfg, repo);
        doc["run"] = record.to_json();
        doc["run"]["stored_at"] = record.stored_at.string();
        text << "executed: best " << record.best_point << " f=" << record.best_value.to_string()
             << " (" << record.outcome << "), stored at " << record.stored_at.string() << "\n";
    }
    emit(opts, doc, text.str());
    return 0;
}

int run_verify(const CommonOpts& opts, const std::string& table_path) {
    std::optional<kint::Objective> override_table;
    if (!table_path.empty()) override_table = kint::load_objective(table_path);
    kint::VerificationReport report =
        kint::verify_paper(override_table ? &*override_table : nullptr);
    json doc = {{"meta", make_meta("verify-paper", opts, {{"table", table_path}})},
                {"verification", kint::verification_to_json(report)}};
    std::ostringstream text;
    text << text_header("verify-paper", opts);
    for (const auto& c : report.checks)
        text << (c.pass ? "PASS" : "FAIL") << ' ' << c.name << ": expected " << c.expected
             << "; computed " << c.computed << "\n";
    text << (report.all_pass ? "all checks passed" : "verification FAILED") << "\n";
    emit(opts, doc, text.str());
    return report.all_pass ? 0 : 1;
}

int run_export_dot(const CommonOpts& opts, int n, int k, const std::string& mode_str,
                   const std::string& objective_path, const std::string& builtin, int cap) {
    const kint::DigraphMode mode = kint::digraph_mode_from_string(mode_str);
    std::optional<kint::Objective> f;
    if (!objective_path.empty() || !builtin.empty())
        f = resolve_objective(objective_path, builtin, cap);
    if (mode != kint::DigraphMode::moves && !f)
        kint::fail(kint::ErrorCode::missing_objective,
                   std::string(to_string(mode)) + " mode needs --objective or --builtin");
    const int order = f ? f->n() : n;
    if (order <= 0) kint::fail(kint::ErrorCode::invalid_params, "--n is required in moves mode");
    if (f && n > 0 && n != f->n())
        kint::fail(kint::ErrorCode::arity_mismatch,
                   "--n " + std::to_string(n) + " does not match objective n=" +
                       std::to_string(f->n()));

    kint::OperationalDigraph d = kint::build_digraph(f ? &*f : nullptr, order, k, mode, cap);
    if (opts.out.empty()) {
        kint::export_dot(d, f ? &*f : nullptr, std::cout);
        return 0;
    }
    kint::export_dot_file(d, f ? &*f : nullptr, opts.out);
    std::cout << "wrote " << to_string(mode) << " digraph (" << d.node_count() << " nodes, "
              << d.arc_count() << " arcs) to " << opts.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-interchange landscapes and adaptive local search over permutations"};
    app.require_subcommand(1);

    CommonOpts table_opts, landscape_opts, search_opts, probe_opts, verify_opts, dot_opts;

    auto* table = app.add_subcommand("table", "Print the g_k search-distance table");
    int t_n = 4, t_k = 3, t_cap = kint::kDefaultEnumerationCap;
    std::string t_target;
    bool t_paper_order = false;
    table->add_option("--n", t_n, "Permutation order");
    table->add_option("--k", t_k, "Window size");
    table->add_option("--target", t_target, "Target permutation (default identity)");
    table->add_flag("--paper-order", t_paper_order, "Use the published n=4 row numbering");
    table->add_option("--cap", t_cap, "Enumeration cap on n");
    add_common(table, table_opts);

    auto* landscape = app.add_subcommand("landscape", "Analyze an operational digraph");
    int l_n = 0, l_k = 2, l_cap = kint::kDefaultEnumerationCap;
    std::string l_mode = "strict", l_objective, l_builtin, l_target;
    landscape->add_option("--n", l_n, "Permutation order (moves mode; else from objective)");
    landscape->add_option("--k", l_k, "Window size");
    landscape->add_option("--mode", l_mode, "Digraph mode")
        ->check(CLI::IsMember({"moves", "strict", "weak"}));
    landscape->add_option("--objective", l_objective, "Objective JSON file");
    landscape->add_option("--builtin", l_builtin, "Builtin objective name");
    landscape->add_option("--target", l_target, "Level-structure target (moves mode)");
    landscape->add_option("--cap", l_cap, "Enumeration cap on n");
    add_common(landscape, landscape_opts);

    auto* search = app.add_subcommand("search", "Run multistart k-interchange local search");
    int s_n = 0, s_k = 0, s_k_min = 0, s_k_max = 0, s_cap = kint::kDefaultEnumerationCap;
    std::string s_objective, s_builtin, s_kind = "F", s_pivot = "first", s_lower_bound;
    std::vector<std::string> s_starts;
    std::uint64_t s_random_starts = 0, s_step_limit = 100000, s_aside_budget = 100000;
    bool s_steps = false;
    search->add_option("--n", s_n, "Expected permutation order (validated against the objective)");
    search->add_option("--objective", s_objective, "Objective JSON file");
    search->add_option("--builtin", s_builtin, "Builtin objective name");
    search->add_option("--kind", s_kind, "Trajectory kind")
        ->check(CLI::IsMember({"F", "FA", "FAB"}));
    search->add_option("--k", s_k, "Fixed window size");
    search->add_option("--k-min", s_k_min, "Adaptive schedule lower window size");
    search->add_option("--k-max", s_k_max, "Adaptive schedule upper window size");
    search->add_option("--pivot", s_pivot, "Pivot rule")
        ->check(CLI::IsMember({"first", "best", "random"}));
    search->add_option("--start", s_starts, "Start permutation (repeatable)");
    search->add_option("--random-starts", s_random_starts, "Number of seeded random starts");
    search->add_option("--step-limit", s_step_limit, "Total step budget per line");
    search->add_option("--aside-budget", s_aside_budget, "Aside step budget per line");
    search->add_option("--lower-bound", s_lower_bound, "Optimum lower bound (exact value)");
    search->add_flag("--steps", s_steps, "Include the full step log in JSON output");
    search->add_option("--cap", s_cap, "Enumeration cap on n");
    add_common(search, search_opts);

    auto* probe = app.add_subcommand("probe", "Probe an instance and select a strategy");
    int p_k_min = 2, p_k_max = 0, p_cap = kint::kDefaultEnumerationCap;
    std::string p_objective, p_builtin, p_repo = "runs";
    std::string p_plateau = "1/20", p_lo = "1/20";
    std::uint64_t p_samples = 0;
    bool p_exhaustive = false, p_execute = false;
    probe->add_option("--objective", p_objective, "Objective JSON file");
    probe->add_option("--builtin", p_builtin, "Builtin objective name");
    probe->add_option("--k-min", p_k_min, "Smallest window size to probe");
    probe->add_option("--k-max", p_k_max, "Largest window size to probe (default n)");
    probe->add_option("--samples", p_samples, "Sampled probe size (default exhaustive)");
    probe->add_flag("--exhaustive", p_exhaustive, "Probe every permutation (within cap)");
    probe->add_flag("--execute", p_execute, "Run the selected plan and persist the record");
    probe->add_option("--repo", p_repo, "Run repository directory");
    probe->add_option("--plateau-threshold", p_plateau, "Plateau-rate threshold (exact value)");
    probe->add_option("--lo-threshold", p_lo, "Local-optimum-fraction threshold (exact value)");
    probe->add_option("--cap", p_cap, "Enumeration cap on n");
    add_common(probe, probe_opts);

    auto* verify = app.add_subcommand("verify-paper", "Recompute the published n=4 results");
    std::string v_table;
    verify->add_option("--table", v_table, "Candidate table objective to check (fault injection)");
    add_common(verify, verify_opts);

    auto* dot = app.add_subcommand("export-dot", "Export an operational digraph as DOT");
    int d_n = 0, d_k = 2, d_cap = kint::kDefaultEnumerationCap;
    std::string d_mode = "strict", d_objective, d_builtin;
    dot->add_option("--n", d_n, "Permutation order (moves mode; else from objective)");
    dot->add_option("--k", d_k, "Window size");
    dot->add_option("--mode", d_mode, "Digraph mode")
        ->check(CLI::IsMember({"moves", "strict", "weak"}));
    dot->add_option("--objective", d_objective, "Objective JSON file");
    dot->add_option("--builtin", d_builtin, "Builtin objective name");
    dot->add_option("--cap", d_cap, "Enumeration cap on n");
    add_common(dot, dot_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (table->parsed())
            return run_table(table_opts, t_n, t_k, t_target, t_paper_order, t_cap);
        if (landscape->parsed())
            return run_landscape(landscape_opts, l_n, l_k, l_mode, l_objective, l_builtin,
                                 l_target, l_cap);
        if (search->parsed())
            return run_search(search_opts, s_n, s_objective, s_builtin, s_kind, s_k, s_k_min,
                              s_k_max, s_pivot, s_starts, s_random_starts, s_step_limit,
                              s_aside_budget, s_lower_bound, s_steps, s_cap);
        if (probe->parsed())
            return run_probe(probe_opts, p_objective, p_builtin, p_k_min, p_k_max, p_samples,
                             p_exhaustive, p_execute, p_repo, p_plateau, p_lo, p_cap);
        if (verify->parsed()) return run_verify(verify_opts, v_table);
        if (dot->parsed())
            return run_export_dot(dot_opts, d_n, d_k, d_mode, d_objective, d_builtin, d_cap);
    } catch (const kint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case kint::ErrorCode::cap_exceeded:
            case kint::ErrorCode::io_error:
                return 1;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
