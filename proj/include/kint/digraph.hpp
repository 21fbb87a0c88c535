#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kint/objective.hpp"
#include "kint/permutation.hpp"
#include "kint/value.hpp"

namespace kint {

enum class DigraphMode { moves, strict, weak };

const char* to_string(DigraphMode mode);
DigraphMode digraph_mode_from_string(const std::string& s);

/**
 * Operational digraph over all n! permutations, dense-indexed by lex rank.
 * moves: symmetric move arcs. strict: arcs u->v with f(v) < f(u), acyclic.
 * weak: arcs u->v with f(v) <= f(u); ties contribute arcs both ways.
 */
struct OperationalDigraph {
    int n = 0;
    int k = 0;
    DigraphMode mode = DigraphMode::moves;
    std::string objective_id; // empty in moves mode
    std::vector<std::vector<std::uint32_t>> out;

    std::uint64_t node_count() const { return out.size(); }
    std::uint64_t arc_count() const;
};

// f may be null only in moves mode.
OperationalDigraph build_digraph(const Objective* f, int n, int k, DigraphMode mode,
                                 int cap = kDefaultEnumerationCap);

/** g_k distances from every permutation to `target` in the k-move graph. */
struct LevelStructure {
    std::vector<std::uint32_t> distances; // by lex rank
    std::uint32_t max_distance = 0;       // L; the structure has L+1 levels
    std::vector<std::vector<std::uint32_t>> levels;

    std::uint32_t level_count() const { return max_distance + 1; }
};

LevelStructure compute_levels(int n, int k, const Permutation& target,
                              int cap = kDefaultEnumerationCap);

// Every node with a directed path (length >= 0) to some listed optimum,
// by reverse traversal; lexicographic order.
std::vector<Permutation> reachability_to_optima(const OperationalDigraph& d,
                                                const std::vector<Permutation>& optima);

// All s with empty improving set V^{k<}(s); lexicographic order.
std::vector<Permutation> enumerate_local_optima(const Objective& f, int n, int k,
                                                int cap = kDefaultEnumerationCap);

// True iff arcs nest between consecutive window sizes for every k in [2, kmax-1]:
// moves mode always, plus strict and weak arc sets when f is supplied.
bool verify_nesting(int n, int kmax, const Objective* f = nullptr,
                    int cap = kDefaultEnumerationCap);

struct LandscapeReport {
    int n = 0;
    int k = 0;
    DigraphMode mode = DigraphMode::strict;
    std::string objective_id;
    std::vector<Permutation> global_optima;
    std::vector<Permutation> reach_set;
    Value reach_fraction;
    std::vector<Permutation> local_optima;
    std::uint32_t level_count = 0; // move-graph levels from the optimum set
    std::uint32_t max_shortest_path_to_optimum = 0; // over the reach set, in this digraph
    bool property1 = false;             // every point reaches an optimum
    std::uint64_t property2_bound = 0;  // explicit bound n(n-1)/2 standing in for "polynomial"
    bool property2_within_bound = false;
    bool nesting_verified = false; // this digraph's arcs nest into the k+1 digraph
};

LandscapeReport analyze(const Objective& f, int n, int k, DigraphMode mode,
                        int cap = kDefaultEnumerationCap);

nlohmann::json report_to_json(const LandscapeReport& report);

// Node label number: the published 24-row numbering for n = 4, 1-based lex rank
// otherwise. Self-inverse for n = 4 (maps display row back to rank).
std::uint64_t figure_number(int n, std::uint64_t rank);

// DOT text: directed arcs with value annotations and same-rank clusters per
// objective value for strict/weak, plain undirected edges for moves.
void export_dot(const OperationalDigraph& d, const Objective* f, std::ostream& os);
void export_dot_file(const OperationalDigraph& d, const Objective* f,
                     const std::filesystem::path& path);

} // namespace kint
