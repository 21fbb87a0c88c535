#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kint/objective.hpp"
#include "kint/search.hpp"
#include "kint/value.hpp"

namespace kint {

struct ProbeKStats {
    int k = 2;
    Value lo_fraction;            // points with empty improving set
    Value mean_improving_degree;  // mean |V^{k<}|
    Value plateau_rate;           // empty improving set but nonempty equal set
};

struct ProbeReport {
    std::string objective_id;
    int n = 0;
    std::uint64_t sampled = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::vector<ProbeKStats> per_k;
};

// Statistics over sampled points (or all of them with samples = nullopt);
// deterministic for a given seed. Exhaustive mode obeys the enumeration cap.
ProbeReport probe_instance(const Objective& f, int n, int k_lo, int k_hi,
                           std::optional<std::uint64_t> samples, std::uint64_t seed,
                           int cap = kDefaultEnumerationCap);

nlohmann::json probe_to_json(const ProbeReport& report);

struct SelectionThresholds {
    Value plateau_rate = Value::ratio(1, 20); // 0.05, exact
    Value lo_fraction = Value::ratio(1, 20);
};

/**
 * Deterministic rule table, probing at the smallest window size k_min:
 * - lo_fraction(k_min) = 1 (degenerate, e.g. constant objective):
 *   F, fixed(k_min), 1 start.
 * - plateau_rate(k_min) above threshold: kind FA, else F.
 * - lo_fraction(k_min) above threshold: adaptive(k_min, k_max) where k_max is
 *   the smallest probed k whose lo_fraction is within threshold (last probed k
 *   if none is); otherwise fixed(k_min).
 * - starts = clamp(1 + floor(24 * lo_fraction(k_min)), 1, 16), random.
 */
StrategyConfig select_strategy(const ProbeReport& probe,
                               const SelectionThresholds& thresholds = {});

struct RunRecord {
    nlohmann::json objective; // full replayable descriptor
    std::string objective_id;
    StrategyConfig config;
    nlohmann::json summaries; // per-line results, no step logs
    std::string started_at;
    std::string finished_at;
    std::string tool_version;
    std::string outcome; // trajectory status of the best line
    Value best_value;
    std::string best_point;
    std::uint64_t success_count = 0;
    std::filesystem::path stored_at;

    nlohmann::json to_json() const;
};

// Runs the multistart plan and appends the record to the run repository
// (one JSON document per run plus a registry of objective ids).
RunRecord execute_plan(const Objective& f, const StrategyConfig& cfg,
                       const std::filesystem::path& repo_dir);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string computed;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

// Recomputes every published figure of the worked n=4 example and the
// structural facts around it. table_override substitutes the candidate table
// for the first check only (fault injection hook).
VerificationReport verify_paper(const Objective* table_override = nullptr);

nlohmann::json verification_to_json(const VerificationReport& report);

// The published 24-value reference table (compact permutation -> value).
const std::vector<std::pair<std::string, int>>& reference_table_n4();

// Table objective built from the reference values; optimum (1,2,3,4).
Objective table1_objective();

// ISO-8601 UTC wall-clock timestamp.
std::string iso_timestamp_utc();

} // namespace kint
