#include "kint/digraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "kint/error.hpp"
#include "kint/json_util.hpp"
#include "kint/moves.hpp"

namespace kint {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void require_valid_k(int n, int k) {
    if (k < 2 || k > n)
        fail(ErrorCode::invalid_k, "k must satisfy 2 <= k <= n (got k=" + std::to_string(k) +
                                       ", n=" + std::to_string(n) + ")");
}

std::vector<Value> evaluate_all(const Objective& f, int n) {
    std::vector<Value> vals;
    vals.reserve(factorial(n));
    std::vector<int> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 1);
    do {
        vals.push_back(f.evaluate(make_permutation(seq)));
    } while (std::next_permutation(seq.begin(), seq.end()));
    return vals;
}

// BFS distances over the k-move graph from the given source ranks.
std::vector<std::uint32_t> move_graph_distances(int n, int k,
                                                const std::vector<std::uint64_t>& sources) {
    std::vector<std::uint32_t> dist(factorial(n), kUnreached);
    std::deque<std::uint64_t> frontier;
    for (auto r : sources) {
        if (dist[r] == kUnreached) {
            dist[r] = 0;
            frontier.push_back(r);
        }
    }
    while (!frontier.empty()) {
        std::uint64_t u = frontier.front();
        frontier.pop_front();
        for (const auto& v : k_neighborhood(lex_unrank(n, u), k)) {
            std::uint64_t rv = lex_rank(v);
            if (dist[rv] == kUnreached) {
                dist[rv] = dist[u] + 1;
                frontier.push_back(rv);
            }
        }
    }
    return dist;
}

std::vector<std::vector<std::uint32_t>> transpose(const OperationalDigraph& d) {
    std::vector<std::vector<std::uint32_t>> in(d.out.size());
    for (std::uint32_t u = 0; u < d.out.size(); ++u)
        for (std::uint32_t v : d.out[u]) in[v].push_back(u);
    return in;
}

std::vector<std::uint64_t> optimum_ranks(const OperationalDigraph& d,
                                         const std::vector<Permutation>& optima) {
    if (optima.empty()) fail(ErrorCode::empty_optima, "optimum set is empty");
    std::vector<std::uint64_t> ranks;
    for (const auto& p : optima) {
        if (p.n() != d.n) fail(ErrorCode::arity_mismatch, "optimum has wrong order");
        ranks.push_back(lex_rank(p));
    }
    return ranks;
}

} // namespace

const char* to_string(DigraphMode mode) {
    switch (mode) {
    case DigraphMode::moves: return "moves";
    case DigraphMode::strict: return "strict";
    case DigraphMode::weak: return "weak";
    }
    return "mode";
}

DigraphMode digraph_mode_from_string(const std::string& s) {
    if (s == "moves") return DigraphMode::moves;
    if (s == "strict") return DigraphMode::strict;
    if (s == "weak") return DigraphMode::weak;
    fail(ErrorCode::invalid_params, "mode must be moves, strict or weak (got '" + s + "')");
}

std::uint64_t OperationalDigraph::arc_count() const {
    std::uint64_t total = 0;
    for (const auto& row : out) total += row.size();
    return total;
}

OperationalDigraph build_digraph(const Objective* f, int n, int k, DigraphMode mode, int cap) {
    require_within_cap(n, cap);
    require_valid_k(n, k);
    if (mode != DigraphMode::moves && f == nullptr)
        fail(ErrorCode::missing_objective, std::string(to_string(mode)) +
                                               " mode needs an objective");
    if (f != nullptr && f->n() != n)
        fail(ErrorCode::arity_mismatch, "objective order does not match n");

    OperationalDigraph d;
    d.n = n;
    d.k = k;
    d.mode = mode;
    if (mode != DigraphMode::moves) d.objective_id = f->id();

    std::vector<Value> vals;
    if (mode != DigraphMode::moves) vals = evaluate_all(*f, n);

    const std::uint64_t total = factorial(n);
    d.out.resize(total);
    std::vector<int> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 1);
    std::uint64_t u = 0;
    do {
        Permutation pu = make_permutation(seq);
        for (const auto& v : k_neighborhood(pu, k)) {
            std::uint64_t rv = lex_rank(v);
            bool keep = true;
            if (mode == DigraphMode::strict)
                keep = vals[rv] < vals[u];
            else if (mode == DigraphMode::weak)
                keep = vals[rv] <= vals[u];
            if (keep) d.out[u].push_back(static_cast<std::uint32_t>(rv));
        }
        ++u;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return d;
}

LevelStructure compute_levels(int n, int k, const Permutation& target, int cap) {
    require_within_cap(n, cap);
    require_valid_k(n, k);
    if (target.n() != n) fail(ErrorCode::arity_mismatch, "target order does not match n");
    LevelStructure ls;
    ls.distances = move_graph_distances(n, k, {lex_rank(target)});
    ls.max_distance = 0;
    for (auto dv : ls.distances)
        if (dv != kUnreached) ls.max_distance = std::max(ls.max_distance, dv);
    ls.levels.assign(ls.max_distance + 1, {});
    for (std::uint32_t r = 0; r < ls.distances.size(); ++r)
        if (ls.distances[r] != kUnreached) ls.levels[ls.distances[r]].push_back(r);
    return ls;
}

std::vector<Permutation> reachability_to_optima(const OperationalDigraph& d,
                                                const std::vector<Permutation>& optima) {
    auto sources = optimum_ranks(d, optima);
    auto in = transpose(d);
    std::vector<bool> reached(d.out.size(), false);
    std::deque<std::uint64_t> frontier;
    for (auto r : sources)
        if (!reached[r]) {
            reached[r] = true;
            frontier.push_back(r);
        }
    while (!frontier.empty()) {
        std::uint64_t v = frontier.front();
        frontier.pop_front();
        for (std::uint32_t u : in[v])
            if (!reached[u]) {
                reached[u] = true;
                frontier.push_back(u);
            }
    }
    std::vector<Permutation> out;
    for (std::uint64_t r = 0; r < reached.size(); ++r)
        if (reached[r]) out.push_back(lex_unrank(d.n, r));
    return out;
}

std::vector<Permutation> enumerate_local_optima(const Objective& f, int n, int k, int cap) {
    require_within_cap(n, cap);
    require_valid_k(n, k);
    if (f.n() != n) fail(ErrorCode::arity_mismatch, "objective order does not match n");
    auto vals = evaluate_all(f, n);
    std::vector<Permutation> out;
    std::vector<int> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 1);
    std::uint64_t u = 0;
    do {
        Permutation pu = make_permutation(seq);
        bool improving = false;
        for (const auto& v : k_neighborhood(pu, k))
            if (vals[lex_rank(v)] < vals[u]) {
                improving = true;
                break;
            }
        if (!improving) out.push_back(pu);
        ++u;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

bool verify_nesting(int n, int kmax, const Objective* f, int cap) {
    require_within_cap(n, cap);
    if (kmax < 2 || kmax > n)
        fail(ErrorCode::invalid_k, "kmax must satisfy 2 <= kmax <= n");
    std::vector<DigraphMode> modes{DigraphMode::moves};
    if (f != nullptr) {
        modes.push_back(DigraphMode::strict);
        modes.push_back(DigraphMode::weak);
    }
    for (DigraphMode mode : modes) {
        const Objective* fm = mode == DigraphMode::moves ? nullptr : f;
        OperationalDigraph prev = build_digraph(fm, n, 2, mode, cap);
        for (int k = 2; k + 1 <= kmax; ++k) {
            OperationalDigraph next = build_digraph(fm, n, k + 1, mode, cap);
            for (std::uint64_t u = 0; u < prev.out.size(); ++u) {
                auto sub = prev.out[u];
                auto super = next.out[u];
                std::sort(sub.begin(), sub.end());
                std::sort(super.begin(), super.end());
                if (!std::includes(super.begin(), super.end(), sub.begin(), sub.end()))
                    return false;
            }
            prev = std::move(next);
        }
    }
    return true;
}

LandscapeReport analyze(const Objective& f, int n, int k, DigraphMode mode, int cap) {
    if (mode == DigraphMode::moves)
        fail(ErrorCode::invalid_params, "analyze needs strict or weak mode");
    LandscapeReport rep;
    rep.n = n;
    rep.k = k;
    rep.mode = mode;
    rep.objective_id = f.id();
    rep.global_optima = f.known_optima() ? *f.known_optima() : global_optima(f, cap);

    OperationalDigraph d = build_digraph(&f, n, k, mode, cap);
    rep.reach_set = reachability_to_optima(d, rep.global_optima);
    rep.reach_fraction = Value::ratio(static_cast<long long>(rep.reach_set.size()),
                                      static_cast<long long>(factorial(n)));
    rep.local_optima = enumerate_local_optima(f, n, k, cap);
    rep.property1 = rep.reach_set.size() == factorial(n);

    std::vector<std::uint64_t> sources;
    for (const auto& p : rep.global_optima) sources.push_back(lex_rank(p));
    auto move_dist = move_graph_distances(n, k, sources);
    std::uint32_t max_level = 0;
    for (auto dv : move_dist)
        if (dv != kUnreached) max_level = std::max(max_level, dv);
    rep.level_count = max_level + 1;

    // shortest directed path to an optimum, measured in the digraph itself
    auto in = transpose(d);
    std::vector<std::uint32_t> dist(d.out.size(), kUnreached);
    std::deque<std::uint64_t> frontier;
    for (auto r : sources)
        if (dist[r] == kUnreached) {
            dist[r] = 0;
            frontier.push_back(r);
        }
    while (!frontier.empty()) {
        std::uint64_t v = frontier.front();
        frontier.pop_front();
        for (std::uint32_t u : in[v])
            if (dist[u] == kUnreached) {
                dist[u] = dist[v] + 1;
                frontier.push_back(u);
            }
    }
    rep.max_shortest_path_to_optimum = 0;
    for (auto dv : dist)
        if (dv != kUnreached)
            rep.max_shortest_path_to_optimum = std::max(rep.max_shortest_path_to_optimum, dv);

    rep.property2_bound = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    rep.property2_within_bound = rep.max_shortest_path_to_optimum <= rep.property2_bound;
    rep.nesting_verified = k >= n || [&] {
        OperationalDigraph up = build_digraph(&f, n, k + 1, mode, cap);
        for (std::uint64_t u = 0; u < d.out.size(); ++u) {
            auto sub = d.out[u];
            auto super = up.out[u];
            std::sort(sub.begin(), sub.end());
            std::sort(super.begin(), super.end());
            if (!std::includes(super.begin(), super.end(), sub.begin(), sub.end())) return false;
        }
        return true;
    }();
    return rep;
}

nlohmann::json report_to_json(const LandscapeReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["mode"] = to_string(rep.mode);
    j["objective"] = rep.objective_id;
    j["global_optima"] = perms_to_json(rep.global_optima);
    j["reach_set"] = perms_to_json(rep.reach_set);
    j["reach_set_size"] = rep.reach_set.size();
    j["reach_fraction"] = rep.reach_fraction.to_string();
    j["local_optima"] = perms_to_json(rep.local_optima);
    j["level_count"] = rep.level_count;
    j["max_shortest_path_to_optimum"] = rep.max_shortest_path_to_optimum;
    j["property1"] = rep.property1;
    j["property2_bound"] = rep.property2_bound;
    j["property2_within_bound"] = rep.property2_within_bound;
    j["nesting_verified"] = rep.nesting_verified;
    return j;
}

std::uint64_t figure_number(int n, std::uint64_t rank) {
    if (n == 4) return ((rank + 12) % 24) + 1;
    return rank + 1;
}

void export_dot(const OperationalDigraph& d, const Objective* f, std::ostream& os) {
    if (d.mode != DigraphMode::moves && f == nullptr)
        fail(ErrorCode::missing_objective, "value annotations need the objective");
    const bool directed = d.mode != DigraphMode::moves;
    os << (directed ? "digraph" : "graph") << " G {\n";
    os << "  node [shape=box];\n";
    std::map<Value, std::vector<std::uint64_t>> by_value;
    for (std::uint64_t r = 0; r < d.node_count(); ++r) {
        Permutation p = lex_unrank(d.n, r);
        os << "  p" << r << " [label=\"" << figure_number(d.n, r) << ": " << p.compact();
        if (directed) {
            Value v = f->evaluate(p);
            os << " (f=" << v.to_string() << ")";
            by_value[v].push_back(r);
        }
        os << "\"];\n";
    }
    for (const auto& [value, nodes] : by_value) {
        os << "  { rank=same;";
        for (auto r : nodes) os << " p" << r << ";";
        os << " }\n";
    }
    for (std::uint64_t u = 0; u < d.node_count(); ++u)
        for (std::uint32_t v : d.out[u]) {
            if (!directed && v < u) continue; // one line per undirected edge
            os << "  p" << u << (directed ? " -> p" : " -- p") << v << ";\n";
        }
    os << "}\n";
}

void export_dot_file(const OperationalDigraph& d, const Objective* f,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
    export_dot(d, f, out);
    out.flush();
    if (!out.good()) fail(ErrorCode::io_error, "write failed for " + path.string());
}

} // namespace kint
