#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kint/permutation.hpp"
#include "kint/value.hpp"

namespace kint {

enum class ObjectiveKind { table, inversion, search_distance, weighted_completion, flowshop2 };
enum class ValueDomain { integer, rational };

const char* to_string(ObjectiveKind kind);

struct WctJob {
    Value p; // processing time, > 0
    Value w; // weight, > 0
};

struct Flowshop2Job {
    Value a; // machine 1 time, > 0
    Value b; // machine 2 time, > 0
};

/**
 * An objective f: P(n) -> Q with exact values, an exact equality rule, and
 * optional known global optima. Immutable; evaluate is pure.
 */
class Objective {
  public:
    // values indexed by compact/parenthesized permutation string; may be partial
    // (evaluate then throws MissingTableEntry). n <= 9.
    static Objective table(int n, const std::vector<std::pair<std::string, Value>>& entries,
                           std::optional<std::vector<Permutation>> known_optima = {});

    static Objective inversion(int n);

    static Objective weighted_completion(std::vector<WctJob> jobs,
                                         std::optional<std::vector<Permutation>> known_optima = {});

    static Objective flowshop2(std::vector<Flowshop2Job> jobs,
                               std::optional<std::vector<Permutation>> known_optima = {});

    ObjectiveKind kind() const { return kind_; }
    int n() const { return n_; }
    ValueDomain value_domain() const { return domain_; }
    const std::optional<std::vector<Permutation>>& known_optima() const { return known_optima_; }

    Value evaluate(const Permutation& s) const;

    // Short identifier, e.g. "search_distance(n=4,k=3,target=1234)".
    std::string id() const;

    // Full replayable document in the loader schema; round-trips through
    // objective_from_json.
    nlohmann::json descriptor() const;

  private:
    friend Objective build_search_distance_objective(int n, int k, const Permutation& target,
                                                     int cap);
    friend Objective objective_from_json(const nlohmann::json& doc);
    Objective() = default;

    ObjectiveKind kind_ = ObjectiveKind::table;
    int n_ = 0;
    ValueDomain domain_ = ValueDomain::integer;
    std::optional<std::vector<Permutation>> known_optima_;
    std::vector<std::optional<Value>> table_; // table / search_distance, dense by lex rank
    int sd_k_ = 0;
    std::optional<Permutation> sd_target_;
    std::vector<WctJob> wct_;
    std::vector<Flowshop2Job> f2_;
};

/**
 * Table objective g_k: BFS distance from each permutation to `target` in the
 * k-move graph (finite everywhere; the graph is connected for k >= 2).
 */
Objective build_search_distance_objective(int n, int k, const Permutation& target,
                                          int cap = kDefaultEnumerationCap);

// Sum of w_j * C_j with jobs processed in the order given by s.
Value weighted_completion_value(const std::vector<WctJob>& jobs, const Permutation& s);

// Two-machine permutation flowshop makespan: machine 2 starts each job at the
// later of its machine-1 completion and machine 2 availability.
Value flowshop2_makespan(const std::vector<Flowshop2Job>& jobs, const Permutation& s);

// Strict parser: unknown fields are rejected, tables must be complete
// (IncompleteTable lists missing keys), parameters must be positive.
Objective load_objective(const std::filesystem::path& path);
Objective objective_from_json(const nlohmann::json& doc);

// Exhaustive global optima in lexicographic order (n <= cap).
std::vector<Permutation> global_optima(const Objective& f, int cap = kDefaultEnumerationCap);

// Known-optima value if declared, else exhaustive minimum if n <= cap, else nullopt.
std::optional<Value> optimum_value(const Objective& f, int cap = kDefaultEnumerationCap);

} // namespace kint
