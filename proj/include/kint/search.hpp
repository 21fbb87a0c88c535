#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kint/moves.hpp"
#include "kint/objective.hpp"
#include "kint/permutation.hpp"
#include "kint/value.hpp"

namespace kint {

enum class TrajectoryKind { F, FA, FAB };
enum class Pivot { first, best, random_pick };
enum class StepKind { forward, aside, backward };
enum class TrajectoryStatus { optimum, local_optimum, step_limit, aside_exhausted };

const char* to_string(TrajectoryKind kind);
const char* to_string(Pivot pivot);
const char* to_string(StepKind kind);
const char* to_string(TrajectoryStatus status);
TrajectoryKind trajectory_kind_from_string(const std::string& s);
Pivot pivot_from_string(const std::string& s);

/** fixed(k) keeps one window size; adaptive(k_min, k_max) escalates by one at a
 * local optimum and resets to k_min after any forward step. */
struct KSchedule {
    bool adaptive = false;
    int k_min = 2;
    int k_max = 2;

    static KSchedule fixed(int k) { return {false, k, k}; }
    static KSchedule adaptive_range(int k_min, int k_max) { return {true, k_min, k_max}; }
    std::string to_string() const;
};

struct StrategyConfig {
    TrajectoryKind kind = TrajectoryKind::F;
    KSchedule schedule = KSchedule::fixed(2);
    Pivot pivot = Pivot::first;
    std::vector<Permutation> starts;      // explicit start list, or
    std::uint64_t random_start_count = 0; // this many seeded random starts
    std::uint64_t seed = 0;
    std::uint64_t step_limit = 100000;
    std::uint64_t aside_budget = 100000;
};

nlohmann::json config_to_json(const StrategyConfig& cfg);
StrategyConfig config_from_json(const nlohmann::json& doc);

struct TrajectoryStep {
    Permutation point; // the point arrived at
    Value value;
    WindowMove move; // the move applied (for backward: the inverse of the entering move)
    StepKind kind = StepKind::forward;
    int k = 2; // window size in effect when the move was chosen
};

/**
 * One search line. Forward steps strictly decrease the value, aside steps keep
 * it, backward steps (FAB) return to an earlier point. final_point is the last
 * point for F/FA and the best visited point for FAB. Status aside_exhausted
 * means the line ended with unvisited equal neighbors left but no aside budget.
 */
struct SearchTrajectory {
    Permutation start;
    Value start_value;
    std::vector<TrajectoryStep> steps;
    TrajectoryStatus status = TrajectoryStatus::local_optimum;
    Permutation final_point;
    Value final_value;
    std::uint64_t forward_count = 0;
    std::uint64_t aside_count = 0;
    std::uint64_t backward_count = 0;
};

struct MultiStartResult {
    std::vector<SearchTrajectory> trajectories;
    std::uint64_t success_count = 0; // lines with status optimum
    Value best_value;
    Permutation best_point;
};

// Improving neighbor chosen by the pivot rule, or nothing at a local optimum.
// first: lexicographically smallest improving neighbor. best: minimum value,
// lexicographic tie-break. random: seeded uniform pick over the improving set.
std::optional<std::pair<Permutation, WindowMove>> search_step(const Permutation& s, int k,
                                                              const Objective& f, Pivot pivot,
                                                              std::mt19937_64& rng);

bool is_local_optimum(const Objective& f, const Permutation& s, int k);

// Optimum value used to recognize success: declared known_optima first, then
// exhaustive evaluation when n <= cap, then the caller's lower bound.
std::optional<Value> resolve_optimum(const Objective& f, std::optional<Value> lower_bound = {},
                                     int cap = kDefaultEnumerationCap);

// Auto-resolves the optimum value via resolve_optimum(f).
SearchTrajectory run_trajectory(const Objective& f, const Permutation& start,
                                const StrategyConfig& cfg);
SearchTrajectory run_trajectory(const Objective& f, const Permutation& start,
                                const StrategyConfig& cfg, std::optional<Value> optimum_value);

MultiStartResult run_multistart(const Objective& f, const StrategyConfig& cfg);
MultiStartResult run_multistart(const Objective& f, const StrategyConfig& cfg,
                                std::optional<Value> optimum_value);

// True iff some sequence of forward/aside steps through distinct points leads
// from start to an optimum-valued point: exhaustive depth-first exploration of
// the step choices (what the FAB kind performs with unlimited budgets).
bool fa_reachable(const Objective& f, const Permutation& start, int k,
                  std::optional<Value> optimum = {});

// Deterministic per-line seed stream (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

std::vector<Permutation> random_permutations(int n, std::uint64_t count, std::uint64_t seed);

nlohmann::json trajectory_to_json(const SearchTrajectory& t, bool include_steps);
nlohmann::json multistart_to_json(const MultiStartResult& r, bool include_steps);

} // namespace kint
