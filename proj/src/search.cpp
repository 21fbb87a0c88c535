#include "kint/search.hpp"

#include <algorithm>
#include <set>

#include "kint/error.hpp"
#include "kint/json_util.hpp"

namespace kint {

const char* to_string(TrajectoryKind kind) {
    switch (kind) {
    case TrajectoryKind::F: return "F";
    case TrajectoryKind::FA: return "FA";
    case TrajectoryKind::FAB: return "FAB";
    }
    return "F";
}

const char* to_string(Pivot pivot) {
    switch (pivot) {
    case Pivot::first: return "first";
    case Pivot::best: return "best";
    case Pivot::random_pick: return "random";
    }
    return "first";
}

const char* to_string(StepKind kind) {
    switch (kind) {
    case StepKind::forward: return "forward";
    case StepKind::aside: return "aside";
    case StepKind::backward: return "backward";
    }
    return "forward";
}

const char* to_string(TrajectoryStatus status) {
    switch (status) {
    case TrajectoryStatus::optimum: return "optimum";
    case TrajectoryStatus::local_optimum: return "local_optimum";
    case TrajectoryStatus::step_limit: return "step_limit";
    case TrajectoryStatus::aside_exhausted: return "aside_exhausted";
    }
    return "local_optimum";
}

TrajectoryKind trajectory_kind_from_string(const std::string& s) {
    if (s == "F") return TrajectoryKind::F;
    if (s == "FA") return TrajectoryKind::FA;
    if (s == "FAB") return TrajectoryKind::FAB;
    fail(ErrorCode::invalid_params, "trajectory kind must be F, FA or FAB (got '" + s + "')");
}

Pivot pivot_from_string(const std::string& s) {
    if (s == "first") return Pivot::first;
    if (s == "best") return Pivot::best;
    if (s == "random") return Pivot::random_pick;
    fail(ErrorCode::invalid_params, "pivot must be first, best or random (got '" + s + "')");
}

std::string KSchedule::to_string() const {
    if (!adaptive) return "fixed(" + std::to_string(k_min) + ")";
    return "adaptive(" + std::to_string(k_min) + "," + std::to_string(k_max) + ")";
}

nlohmann::json config_to_json(const StrategyConfig& cfg) {
    nlohmann::json j;
    j["kind"] = to_string(cfg.kind);
    j["schedule"] = {{"adaptive", cfg.schedule.adaptive},
                     {"k_min", cfg.schedule.k_min},
                     {"k_max", cfg.schedule.k_max}};
    j["pivot"] = to_string(cfg.pivot);
    j["starts"] = perms_to_json(cfg.starts);
    j["random_start_count"] = cfg.random_start_count;
    j["seed"] = cfg.seed;
    j["step_limit"] = cfg.step_limit;
    j["aside_budget"] = cfg.aside_budget;
    return j;
}

StrategyConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail(ErrorCode::parse_error, "strategy config must be an object");
    try {
        StrategyConfig cfg;
        cfg.kind = trajectory_kind_from_string(doc.at("kind").get<std::string>());
        const auto& sched = doc.at("schedule");
        cfg.schedule.adaptive = sched.at("adaptive").get<bool>();
        cfg.schedule.k_min = sched.at("k_min").get<int>();
        cfg.schedule.k_max = sched.at("k_max").get<int>();
        cfg.pivot = pivot_from_string(doc.at("pivot").get<std::string>());
        for (const auto& s : doc.at("starts"))
            cfg.starts.push_back(parse_permutation(s.get<std::string>()));
        cfg.random_start_count = doc.at("random_start_count").get<std::uint64_t>();
        cfg.seed = doc.at("seed").get<std::uint64_t>();
        cfg.step_limit = doc.at("step_limit").get<std::uint64_t>();
        cfg.aside_budget = doc.at("aside_budget").get<std::uint64_t>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("strategy config: ") + e.what());
    }
}

namespace {

struct Candidate {
    Permutation point;
    WindowMove move;
    Value value;
};

// Unvisited neighbors below (improving) or at (equal) the reference value,
// lexicographic order.
void classify_candidates(const Objective& f, const Permutation& s, int k, const Value& ref,
                         const std::set<Permutation>& visited, std::vector<Candidate>& improving,
                         std::vector<Candidate>* equal) {
    improving.clear();
    if (equal) equal->clear();
    for (auto& [point, move] : k_neighborhood_with_moves(s, k)) {
        if (visited.contains(point)) continue;
        Value v = f.evaluate(point);
        if (v < ref)
            improving.push_back({std::move(point), move, v});
        else if (equal && v == ref)
            equal->push_back({std::move(point), move, v});
    }
}

const Candidate& pick(const std::vector<Candidate>& candidates, Pivot pivot,
                      std::mt19937_64& rng) {
    switch (pivot) {
    case Pivot::first: return candidates.front();
    case Pivot::best: {
        std::size_t best = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i)
            if (candidates[i].value < candidates[best].value) best = i;
        return candidates[best]; // candidates are lex-sorted, first minimum wins ties
    }
    case Pivot::random_pick:
        return candidates[static_cast<std::size_t>(rng() % candidates.size())];
    }
    return candidates.front();
}

void validate_config(const Objective& f, const StrategyConfig& cfg) {
    const int n = f.n();
    if (cfg.schedule.k_min < 2 || cfg.schedule.k_min > cfg.schedule.k_max ||
        cfg.schedule.k_max > n)
        fail(ErrorCode::invalid_k,
             "schedule " + cfg.schedule.to_string() + " invalid for n=" + std::to_string(n));
    if (cfg.step_limit == 0) fail(ErrorCode::invalid_params, "step_limit must be positive");
}

struct Frame {
    Permutation point;
    Value value;
    int k;
    std::optional<WindowMove> entered_by;
};

} // namespace

std::optional<std::pair<Permutation, WindowMove>> search_step(const Permutation& s, int k,
                                                              const Objective& f, Pivot pivot,
                                                              std::mt19937_64& rng) {
    std::vector<Candidate> improving;
    classify_candidates(f, s, k, f.evaluate(s), {}, improving, nullptr);
    if (improving.empty()) return std::nullopt;
    const Candidate& c = pick(improving, pivot, rng);
    return std::make_pair(c.point, c.move);
}

bool is_local_optimum(const Objective& f, const Permutation& s, int k) {
    const Value fs = f.evaluate(s);
    for (const auto& x : k_neighborhood(s, k))
        if (f.evaluate(x) < fs) return false;
    return true;
}

std::optional<Value> resolve_optimum(const Objective& f, std::optional<Value> lower_bound,
                                     int cap) {
    if (f.known_optima()) return f.evaluate(f.known_optima()->front());
    if (f.n() <= cap) return f.evaluate(global_optima(f, cap).front());
    return lower_bound;
}

SearchTrajectory run_trajectory(const Objective& f, const Permutation& start,
                                const StrategyConfig& cfg) {
    return run_trajectory(f, start, cfg, resolve_optimum(f));
}

SearchTrajectory run_trajectory(const Objective& f, const Permutation& start,
                                const StrategyConfig& cfg, std::optional<Value> optimum_value) {
    validate_config(f, cfg);
    if (start.n() != f.n()) fail(ErrorCode::arity_mismatch, "start order does not match objective");

    SearchTrajectory t;
    t.start = start;
    t.start_value = f.evaluate(start);
    std::mt19937_64 rng(cfg.seed);

    std::set<Permutation> visited{start};
    std::vector<Frame> stack{{start, t.start_value, cfg.schedule.k_min, std::nullopt}};
    Permutation best_point = start;
    Value best_value = t.start_value;

    const bool can_aside = cfg.kind != TrajectoryKind::F;
    const bool can_backward = cfg.kind == TrajectoryKind::FAB;
    bool aside_blocked = false;

    auto at_optimum = [&](const Value& v) { return optimum_value && v == *optimum_value; };

    std::optional<TrajectoryStatus> status;
    if (at_optimum(t.start_value)) status = TrajectoryStatus::optimum;

    std::vector<Candidate> improving, equal;
    while (!status) {
        if (t.steps.size() >= cfg.step_limit) {
            status = TrajectoryStatus::step_limit;
            break;
        }
        Frame& top = stack.back();
        aside_blocked = false;
        classify_candidates(f, top.point, top.k, top.value, visited, improving,
                            can_aside ? &equal : nullptr);
        if (!improving.empty()) {
            const Candidate c = pick(improving, cfg.pivot, rng);
            const int k_used = top.k;
            t.steps.push_back({c.point, c.value, c.move, StepKind::forward, k_used});
            ++t.forward_count;
            visited.insert(c.point);
            if (c.value < best_value || (c.value == best_value && c.point < best_point)) {
                best_value = c.value;
                best_point = c.point;
            }
            stack.push_back({c.point, c.value, cfg.schedule.k_min, c.move});
            if (at_optimum(c.value)) status = TrajectoryStatus::optimum;
            continue;
        }
        if (can_aside && !equal.empty()) {
            if (t.aside_count < cfg.aside_budget) {
                const Candidate c = pick(equal, cfg.pivot, rng);
                t.steps.push_back({c.point, c.value, c.move, StepKind::aside, top.k});
                ++t.aside_count;
                visited.insert(c.point);
                if (c.point < best_point && c.value == best_value) best_point = c.point;
                stack.push_back({c.point, c.value, top.k, c.move});
                continue;
            }
            aside_blocked = true;
        }
        if (cfg.schedule.adaptive && top.k < cfg.schedule.k_max) {
            ++top.k;
            continue;
        }
        if (can_backward && stack.size() > 1) {
            Frame popped = std::move(stack.back());
            stack.pop_back();
            const Frame& parent = stack.back();
            t.steps.push_back({parent.point, parent.value, inverse_move(*popped.entered_by),
                               StepKind::backward, popped.entered_by->k});
            ++t.backward_count;
            continue;
        }
        status = aside_blocked ? TrajectoryStatus::aside_exhausted
                               : TrajectoryStatus::local_optimum;
    }

    t.status = *status;
    if (cfg.kind == TrajectoryKind::FAB) {
        t.final_point = best_point;
        t.final_value = best_value;
    } else {
        t.final_point = stack.back().point;
        t.final_value = stack.back().value;
    }
    if (at_optimum(t.final_value)) t.status = TrajectoryStatus::optimum;
    return t;
}

MultiStartResult run_multistart(const Objective& f, const StrategyConfig& cfg) {
    return run_multistart(f, cfg, resolve_optimum(f));
}

MultiStartResult run_multistart(const Objective& f, const StrategyConfig& cfg,
                                std::optional<Value> optimum_value) {
    validate_config(f, cfg);
    std::vector<Permutation> starts = cfg.starts;
    if (starts.empty()) {
        if (cfg.random_start_count == 0)
            fail(ErrorCode::invalid_params, "no starts: give a list or a random count");
        starts = random_permutations(f.n(), cfg.random_start_count, derive_seed(cfg.seed, 0));
    }
    MultiStartResult result;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        StrategyConfig line = cfg;
        line.seed = derive_seed(cfg.seed, i + 1); // lines are independent
        result.trajectories.push_back(run_trajectory(f, starts[i], line, optimum_value));
    }
    result.best_value = result.trajectories.front().final_value;
    result.best_point = result.trajectories.front().final_point;
    for (const auto& t : result.trajectories) {
        if (t.status == TrajectoryStatus::optimum) ++result.success_count;
        if (t.final_value < result.best_value ||
            (t.final_value == result.best_value && t.final_point < result.best_point)) {
            result.best_value = t.final_value;
            result.best_point = t.final_point;
        }
    }
    return result;
}

bool fa_reachable(const Objective& f, const Permutation& start, int k,
                  std::optional<Value> optimum) {
    if (!optimum) optimum = resolve_optimum(f);
    if (!optimum) fail(ErrorCode::invalid_params, "optimum value unknown");
    std::set<Permutation> visited{start};
    std::vector<Permutation> stack{start};
    while (!stack.empty()) {
        Permutation u = std::move(stack.back());
        stack.pop_back();
        Value fu = f.evaluate(u);
        if (fu == *optimum) return true;
        for (auto& v : k_neighborhood(u, k)) {
            if (f.evaluate(v) > fu) continue; // forward/aside arcs only
            if (visited.insert(v).second) stack.push_back(std::move(v));
        }
    }
    return false;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<Permutation> random_permutations(int n, std::uint64_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Permutation> out;
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (std::uint64_t c = 0; c < count; ++c) {
        for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
        for (int i = n - 1; i > 0; --i) {
            auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1));
            std::swap(seq[static_cast<std::size_t>(i)], seq[j]);
        }
        out.push_back(make_permutation(seq));
    }
    return out;
}

nlohmann::json trajectory_to_json(const SearchTrajectory& t, bool include_steps) {
    nlohmann::json j;
    j["start"] = t.start.to_string();
    j["start_value"] = value_to_json(t.start_value);
    j["status"] = to_string(t.status);
    j["final_point"] = t.final_point.to_string();
    j["final_value"] = value_to_json(t.final_value);
    j["forward_count"] = t.forward_count;
    j["aside_count"] = t.aside_count;
    j["backward_count"] = t.backward_count;
    j["step_count"] = t.steps.size();
    if (include_steps) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : t.steps)
            steps.push_back({{"point", s.point.to_string()},
                             {"value", value_to_json(s.value)},
                             {"move",
                              {{"start", s.move.start},
                               {"k", s.move.k},
                               {"arrangement", s.move.arrangement.to_string()}}},
                             {"kind", to_string(s.kind)},
                             {"k", s.k}});
        j["steps"] = std::move(steps);
    }
    return j;
}

nlohmann::json multistart_to_json(const MultiStartResult& r, bool include_steps) {
    nlohmann::json j;
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& t : r.trajectories) lines.push_back(trajectory_to_json(t, include_steps));
    j["trajectories"] = std::move(lines);
    j["success_count"] = r.success_count;
    j["best_value"] = value_to_json(r.best_value);
    j["best_point"] = r.best_point.to_string();
    return j;
}

} // namespace kint
