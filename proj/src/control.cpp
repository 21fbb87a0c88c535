#include "kint/control.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>
#include <set>

#include "kint/digraph.hpp"
#include "kint/error.hpp"
#include "kint/json_util.hpp"
#include "kint/moves.hpp"
#include "kint/version.hpp"

namespace kint {

ProbeReport probe_instance(const Objective& f, int n, int k_lo, int k_hi,
                           std::optional<std::uint64_t> samples, std::uint64_t seed, int cap) {
    if (n != f.n()) fail(ErrorCode::arity_mismatch, "n does not match the objective");
    if (k_lo < 2 || k_lo > k_hi || k_hi > n)
        fail(ErrorCode::invalid_k, "probe range [" + std::to_string(k_lo) + ", " +
                                       std::to_string(k_hi) + "] invalid for n=" +
                                       std::to_string(n));
    ProbeReport report;
    report.objective_id = f.id();
    report.n = n;
    report.seed = seed;
    report.exhaustive = !samples.has_value();

    std::vector<Permutation> points;
    if (report.exhaustive) {
        require_within_cap(n, cap);
        const std::uint64_t total = factorial(n);
        points.reserve(total);
        for (std::uint64_t r = 0; r < total; ++r) points.push_back(lex_unrank(n, r));
    } else {
        if (*samples == 0) fail(ErrorCode::invalid_params, "sample count must be positive");
        points = random_permutations(n, *samples, seed);
    }
    report.sampled = points.size();

    for (int k = k_lo; k <= k_hi; ++k) {
        std::uint64_t locally_optimal = 0, plateau = 0, improving_total = 0;
        for (const auto& s : points) {
            const Value fs = f.evaluate(s);
            std::uint64_t improving = 0, equal = 0;
            for (const auto& x : k_neighborhood(s, k)) {
                const Value fx = f.evaluate(x);
                if (fx < fs)
                    ++improving;
                else if (fx == fs)
                    ++equal;
            }
            improving_total += improving;
            if (improving == 0) {
                ++locally_optimal;
                if (equal > 0) ++plateau;
            }
        }
        const auto count = static_cast<long long>(points.size());
        report.per_k.push_back({k,
                                Value::ratio(static_cast<long long>(locally_optimal), count),
                                Value::ratio(static_cast<long long>(improving_total), count),
                                Value::ratio(static_cast<long long>(plateau), count)});
    }
    return report;
}

nlohmann::json probe_to_json(const ProbeReport& report) {
    nlohmann::json j;
    j["objective"] = report.objective_id;
    j["n"] = report.n;
    j["sampled"] = report.sampled;
    j["exhaustive"] = report.exhaustive;
    j["seed"] = report.seed;
    nlohmann::json per_k = nlohmann::json::array();
    for (const auto& s : report.per_k)
        per_k.push_back({{"k", s.k},
                         {"local_optimum_fraction", s.lo_fraction.to_string()},
                         {"mean_improving_degree", s.mean_improving_degree.to_string()},
                         {"plateau_rate", s.plateau_rate.to_string()}});
    j["per_k"] = std::move(per_k);
    return j;
}

StrategyConfig select_strategy(const ProbeReport& probe, const SelectionThresholds& thresholds) {
    if (probe.per_k.empty()) fail(ErrorCode::invalid_params, "probe covers no k");
    const ProbeKStats& base = probe.per_k.front();

    StrategyConfig cfg;
    cfg.pivot = Pivot::first;
    cfg.seed = probe.seed;

    if (base.lo_fraction == Value(1)) { // nothing to search: every point is already optimal
        cfg.kind = TrajectoryKind::F;
        cfg.schedule = KSchedule::fixed(base.k);
        cfg.random_start_count = 1;
        return cfg;
    }
    cfg.kind = base.plateau_rate > thresholds.plateau_rate ? TrajectoryKind::FA
                                                           : TrajectoryKind::F;
    if (base.lo_fraction > thresholds.lo_fraction) {
        int k_max = probe.per_k.back().k;
        for (const auto& s : probe.per_k)
            if (s.lo_fraction <= thresholds.lo_fraction) {
                k_max = s.k;
                break;
            }
        cfg.schedule = KSchedule::adaptive_range(base.k, k_max);
    } else {
        cfg.schedule = KSchedule::fixed(base.k);
    }
    // more local optima, more independent lines
    long long starts = 1 + (24 * base.lo_fraction.num()) / base.lo_fraction.den();
    cfg.random_start_count = static_cast<std::uint64_t>(std::clamp<long long>(starts, 1, 16));
    return cfg;
}

std::string iso_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json RunRecord::to_json() const {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = tool_version;
    j["objective"] = objective;
    j["objective_id"] = objective_id;
    j["config"] = config_to_json(config);
    j["summaries"] = summaries;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["outcome"] = outcome;
    j["best_value"] = value_to_json(best_value);
    j["best_point"] = best_point;
    j["success_count"] = success_count;
    return j;
}

RunRecord execute_plan(const Objective& f, const StrategyConfig& cfg,
                       const std::filesystem::path& repo_dir) {
    std::error_code ec;
    std::filesystem::create_directories(repo_dir, ec);
    if (ec) fail(ErrorCode::io_error, "cannot create repository " + repo_dir.string());

    RunRecord record;
    record.objective = f.descriptor();
    record.objective_id = f.id();
    record.config = cfg;
    record.tool_version = kToolVersion;
    record.started_at = iso_timestamp_utc();

    MultiStartResult result = run_multistart(f, cfg);
    record.finished_at = iso_timestamp_utc();
    record.summaries = multistart_to_json(result, false);
    record.best_value = result.best_value;
    record.best_point = result.best_point.to_string();
    record.success_count = result.success_count;
    record.outcome = "local_optimum";
    for (const auto& t : result.trajectories)
        if (t.final_value == result.best_value && t.final_point == result.best_point) {
            record.outcome = to_string(t.status);
            break;
        }
    if (result.success_count > 0) record.outcome = to_string(TrajectoryStatus::optimum);

    std::uint64_t index = 1;
    for (const auto& entry : std::filesystem::directory_iterator(repo_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("run-", 0) == 0) ++index;
    }
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "%06llu", static_cast<unsigned long long>(index));
    record.stored_at = repo_dir / ("run-" + std::string(suffix) + ".json");
    {
        std::ofstream out(record.stored_at);
        if (!out) fail(ErrorCode::io_error, "cannot write " + record.stored_at.string());
        out << record.to_json().dump(2) << '\n';
        if (!out.good()) fail(ErrorCode::io_error, "write failed for " + record.stored_at.string());
    }

    const auto registry_path = repo_dir / "registry.json";
    nlohmann::json registry;
    if (std::filesystem::exists(registry_path)) {
        std::ifstream in(registry_path);
        if (!in) fail(ErrorCode::io_error, "cannot read " + registry_path.string());
        try {
            registry = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            fail(ErrorCode::parse_error, registry_path.string() + ": " + e.what());
        }
    } else {
        registry = {{"objectives", nlohmann::json::array()}};
    }
    auto& ids = registry["objectives"];
    if (std::find(ids.begin(), ids.end(), nlohmann::json(record.objective_id)) == ids.end())
        ids.push_back(record.objective_id);
    {
        std::ofstream out(registry_path);
        if (!out) fail(ErrorCode::io_error, "cannot write " + registry_path.string());
        out << registry.dump(2) << '\n';
        if (!out.good()) fail(ErrorCode::io_error, "write failed for " + registry_path.string());
    }
    return record;
}

const std::vector<std::pair<std::string, int>>& reference_table_n4() {
    static const std::vector<std::pair<std::string, int>> table = {
        {"1234", 0}, {"1243", 1}, {"1324", 1}, {"1342", 1}, {"1423", 1}, {"1432", 1},
        {"2134", 1}, {"2143", 2}, {"2314", 1}, {"2341", 2}, {"2413", 2}, {"2431", 2},
        {"3124", 1}, {"3142", 2}, {"3214", 1}, {"3241", 2}, {"3412", 2}, {"3421", 2},
        {"4123", 2}, {"4132", 2}, {"4213", 2}, {"4231", 3}, {"4312", 2}, {"4321", 3},
    };
    return table;
}

Objective table1_objective() {
    std::vector<std::pair<std::string, Value>> entries;
    for (const auto& [key, value] : reference_table_n4()) entries.emplace_back(key, Value(value));
    return Objective::table(4, entries,
                            std::vector<Permutation>{Permutation::identity(4)});
}

namespace {

std::string perm_set_to_string(const std::vector<Permutation>& ps) {
    std::string out = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ", ";
        out += ps[i].compact();
    }
    return out + "}";
}

CheckResult check_table_values(const Objective& candidate) {
    CheckResult c;
    c.name = "table_values";
    c.expected = "24/24 reference values";
    int matches = 0;
    std::string first_mismatch;
    for (const auto& [key, expected] : reference_table_n4()) {
        Value got = candidate.evaluate(parse_permutation(key));
        if (got == Value(expected)) {
            ++matches;
        } else if (first_mismatch.empty()) {
            first_mismatch =
                key + ": got " + got.to_string() + ", want " + std::to_string(expected);
        }
    }
    c.computed = std::to_string(matches) + "/24";
    if (!first_mismatch.empty()) c.computed += " (first mismatch " + first_mismatch + ")";
    c.pass = matches == 24;
    return c;
}

CheckResult check_stuck_point(const Objective& g3) {
    CheckResult c;
    c.name = "stuck_point_k2";
    c.expected = "0 forward steps from (4,3,1,2) at k=2; neighbor values {2,2,3}";
    StrategyConfig cfg;
    cfg.kind = TrajectoryKind::F;
    cfg.schedule = KSchedule::fixed(2);
    const Permutation start = parse_permutation("4312");
    SearchTrajectory t = run_trajectory(g3, start, cfg);
    std::vector<std::string> neighbor_values;
    for (const auto& x : k_neighborhood(start, 2))
        neighbor_values.push_back(g3.evaluate(x).to_string());
    std::sort(neighbor_values.begin(), neighbor_values.end());
    std::string values;
    for (const auto& v : neighbor_values) values += (values.empty() ? "" : ",") + v;
    c.computed = std::to_string(t.forward_count) + " forward steps, final " +
                 t.final_point.compact() + ", neighbor values {" + values + "}";
    c.pass = t.forward_count == 0 && t.final_point == start &&
             t.status == TrajectoryStatus::local_optimum && values == "2,2,3";
    return c;
}

CheckResult check_two_step_descent(const Objective& g3) {
    CheckResult c;
    c.name = "two_step_descent_k3";
    c.expected = "(4,3,1,2) reaches (1,2,3,4) in exactly 2 forward steps at k=3";
    StrategyConfig cfg;
    cfg.kind = TrajectoryKind::F;
    cfg.schedule = KSchedule::fixed(3);
    SearchTrajectory t = run_trajectory(g3, parse_permutation("4312"), cfg);
    c.computed = std::to_string(t.forward_count) + " forward steps to " + t.final_point.compact();
    c.pass = t.forward_count == 2 && t.final_point == Permutation::identity(4) &&
             t.status == TrajectoryStatus::optimum;
    return c;
}

CheckResult check_reach(const Objective& g3, int k, DigraphMode mode, const std::string& name,
                        const std::optional<std::vector<std::string>>& expect_set) {
    CheckResult c;
    c.name = name;
    OperationalDigraph d = build_digraph(&g3, 4, k, mode);
    auto reach = reachability_to_optima(d, {Permutation::identity(4)});
    if (expect_set) {
        std::vector<std::string> got;
        for (const auto& p : reach) got.push_back(p.compact());
        std::sort(got.begin(), got.end());
        auto want = *expect_set;
        std::sort(want.begin(), want.end());
        c.expected = "reach set of " + std::to_string(want.size()) + " points";
        c.computed = perm_set_to_string(reach);
        c.pass = got == want;
    } else {
        c.expected = "reach fraction 24/24";
        c.computed = std::to_string(reach.size()) + "/24";
        c.pass = reach.size() == 24;
    }
    return c;
}

CheckResult check_level_counts() {
    CheckResult c;
    c.name = "level_counts";
    c.expected = "levels 7/4/2 for k=2/3/4 at n=4; g_2 = inversion count for n <= 6";
    const auto id4 = Permutation::identity(4);
    std::uint32_t l2 = compute_levels(4, 2, id4).level_count();
    std::uint32_t l3 = compute_levels(4, 3, id4).level_count();
    std::uint32_t l4 = compute_levels(4, 4, id4).level_count();
    bool inv_ok = true;
    for (int n = 2; n <= 6 && inv_ok; ++n) {
        LevelStructure ls = compute_levels(n, 2, Permutation::identity(n));
        for (std::uint64_t r = 0; r < ls.distances.size(); ++r)
            if (static_cast<int>(ls.distances[r]) != inversion_count(lex_unrank(n, r))) {
                inv_ok = false;
                break;
            }
    }
    c.computed = "levels " + std::to_string(l2) + "/" + std::to_string(l3) + "/" +
                 std::to_string(l4) + ", inversion equivalence " + (inv_ok ? "holds" : "fails");
    c.pass = l2 == 7 && l3 == 4 && l4 == 2 && inv_ok;
    return c;
}

CheckResult check_nesting(const Objective& g3) {
    CheckResult c;
    c.name = "nesting";
    c.expected = "arc sets nest for n=4 (all modes) and n=5 (all modes)";
    Objective inv5 = Objective::inversion(5);
    bool n4 = verify_nesting(4, 4, &g3);
    bool n5 = verify_nesting(5, 5, &inv5);
    c.computed = std::string("n=4 ") + (n4 ? "ok" : "violated") + ", n=5 " +
                 (n5 ? "ok" : "violated");
    c.pass = n4 && n5;
    return c;
}

} // namespace

VerificationReport verify_paper(const Objective* table_override) {
    VerificationReport report;
    Objective g3 = build_search_distance_objective(4, 3, Permutation::identity(4));
    report.checks.push_back(check_table_values(table_override ? *table_override : g3));
    report.checks.push_back(check_stuck_point(g3));
    report.checks.push_back(check_two_step_descent(g3));
    report.checks.push_back(check_reach(
        g3, 2, DigraphMode::strict, "strict_k2_reach",
        std::vector<std::string>{"1234", "1243", "1324", "2134", "2143"}));
    report.checks.push_back(check_reach(g3, 2, DigraphMode::weak, "weak_k2_reach", std::nullopt));
    report.checks.push_back(
        check_reach(g3, 3, DigraphMode::strict, "strict_k3_reach", std::nullopt));
    report.checks.push_back(check_level_counts());
    report.checks.push_back(check_nesting(g3));
    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const CheckResult& c) { return c.pass; });
    return report;
}

nlohmann::json verification_to_json(const VerificationReport& report) {
    nlohmann::json j;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"expected", c.expected},
                          {"computed", c.computed}});
    j["checks"] = std::move(checks);
    j["all_pass"] = report.all_pass;
    return j;
}

} // namespace kint
