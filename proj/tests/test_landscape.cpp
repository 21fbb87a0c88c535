#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "kint/digraph.hpp"
#include "kint/error.hpp"
#include "kint/moves.hpp"
#include "kint/objective.hpp"
#include "test_support.hpp"

using namespace kint;

namespace {

std::set<std::string> names(const std::vector<Permutation>& ps) {
    std::set<std::string> out;
    for (const auto& p : ps) out.insert(p.compact());
    return out;
}

std::set<std::string> names(const std::vector<std::string>& ss) {
    return {ss.begin(), ss.end()};
}

// Kahn's algorithm; true iff the digraph has no directed cycle.
bool is_acyclic(const OperationalDigraph& d) {
    std::vector<int> indeg(d.out.size(), 0);
    for (const auto& arcs : d.out)
        for (auto v : arcs) ++indeg[v];
    std::vector<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < d.out.size(); ++u)
        if (indeg[u] == 0) queue.push_back(u);
    std::size_t seen = 0;
    while (!queue.empty()) {
        const std::uint32_t u = queue.back();
        queue.pop_back();
        ++seen;
        for (auto v : d.out[u])
            if (--indeg[v] == 0) queue.push_back(v);
    }
    return seen == d.out.size();
}

} // namespace

TEST_CASE("moves digraph is the symmetric neighborhood relation") {
    const OperationalDigraph d = build_digraph(nullptr, 4, 2, DigraphMode::moves);
    CHECK(d.node_count() == 24);
    CHECK(d.arc_count() == 72); // 36 undirected edges
    for (std::uint32_t u = 0; u < d.out.size(); ++u) {
        const Permutation s = lex_unrank(4, u);
        const auto hood = k_neighborhood(s, 2);
        REQUIRE(d.out[u].size() == hood.size());
        for (const auto& v : hood) {
            const auto r = static_cast<std::uint32_t>(lex_rank(v));
            CHECK(std::find(d.out[u].begin(), d.out[u].end(), r) != d.out[u].end());
            CHECK(std::find(d.out[r].begin(), d.out[r].end(), u) != d.out[r].end()); // symmetric
        }
    }
}

TEST_CASE("strict digraph holds exactly the improving arcs and is acyclic") {
    const Objective f = support::reference_objective();
    const OperationalDigraph d = build_digraph(&f, 4, 2, DigraphMode::strict);
    CHECK(d.objective_id == f.id());
    for (std::uint32_t u = 0; u < d.out.size(); ++u) {
        const Permutation s = lex_unrank(4, u);
        std::set<std::uint32_t> got(d.out[u].begin(), d.out[u].end());
        std::set<std::uint32_t> want;
        for (const auto& v : k_neighborhood(s, 2))
            if (f.evaluate(v) < f.evaluate(s)) want.insert(static_cast<std::uint32_t>(lex_rank(v)));
        CHECK(got == want);
    }
    CHECK(is_acyclic(d));

    // published detail: the in-arcs of the optimum come from its three swaps
    std::set<std::string> sources;
    for (std::uint32_t u = 0; u < d.out.size(); ++u)
        for (auto v : d.out[u])
            if (v == 0) sources.insert(lex_unrank(4, u).compact());
    CHECK(sources == std::set<std::string>{"1243", "1324", "2134"});
}

TEST_CASE("weak digraph adds exactly the tie arcs") {
    const Objective f = support::reference_objective();
    const OperationalDigraph strict = build_digraph(&f, 4, 2, DigraphMode::strict);
    const OperationalDigraph weak = build_digraph(&f, 4, 2, DigraphMode::weak);
    for (std::uint32_t u = 0; u < weak.out.size(); ++u) {
        const Permutation s = lex_unrank(4, u);
        std::set<std::uint32_t> got(weak.out[u].begin(), weak.out[u].end());
        std::set<std::uint32_t> want(strict.out[u].begin(), strict.out[u].end());
        for (const auto& v : k_neighborhood(s, 2))
            if (f.evaluate(v) == f.evaluate(s)) want.insert(static_cast<std::uint32_t>(lex_rank(v)));
        CHECK(got == want);
    }
    // ties make 2-cycles
    const auto r3412 = static_cast<std::uint32_t>(lex_rank(parse_permutation("3412")));
    const auto r4312 = static_cast<std::uint32_t>(lex_rank(parse_permutation("4312")));
    CHECK(std::find(weak.out[r4312].begin(), weak.out[r4312].end(), r3412) != weak.out[r4312].end());
    CHECK(std::find(weak.out[r3412].begin(), weak.out[r3412].end(), r4312) != weak.out[r3412].end());
}

TEST_CASE("strict and weak modes need an objective") {
    CHECK_THROWS_AS(build_digraph(nullptr, 4, 2, DigraphMode::strict), Error);
    try {
        build_digraph(nullptr, 4, 2, DigraphMode::weak);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::missing_objective);
    }
    CHECK_THROWS_AS(build_digraph(nullptr, 10, 2, DigraphMode::moves), Error); // cap
}

TEST_CASE("level structure counts and distances") {
    const LevelStructure l2 = compute_levels(4, 2, Permutation::identity(4));
    CHECK(l2.level_count() == 7);
    CHECK(l2.max_distance == 6);
    std::vector<std::size_t> sizes;
    for (const auto& level : l2.levels) sizes.push_back(level.size());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 5, 6, 5, 3, 1});

    CHECK(compute_levels(4, 3, Permutation::identity(4)).level_count() == 4);
    CHECK(compute_levels(4, 4, Permutation::identity(4)).level_count() == 2);
    CHECK(compute_levels(5, 5, Permutation::identity(5)).level_count() == 2);

    for (int n = 2; n <= 6; ++n) {
        const LevelStructure ls = compute_levels(n, 2, Permutation::identity(n));
        CHECK(ls.level_count() == static_cast<std::uint32_t>(n * (n - 1) / 2 + 1));
        for (std::uint64_t r = 0; r < ls.distances.size(); ++r)
            CHECK(static_cast<int>(ls.distances[r]) ==
                  support::inversions_oracle(support::to_vec(lex_unrank(n, r))));
    }

    // distances to a non-identity target still come from the same move graph
    const Permutation target = parse_permutation("2413");
    const LevelStructure lt = compute_levels(4, 2, target);
    const auto oracle = support::bfs_distances_oracle(4, 2, support::to_vec(target));
    for (std::uint64_t r = 0; r < lt.distances.size(); ++r)
        CHECK(static_cast<int>(lt.distances[r]) == oracle.at(support::to_vec(lex_unrank(4, r))));
}

TEST_CASE("reachability to the optimum reproduces the published digraphs") {
    const Objective f = support::reference_objective();
    const std::vector<Permutation> optima = {Permutation::identity(4)};

    const auto strict2 = reachability_to_optima(build_digraph(&f, 4, 2, DigraphMode::strict), optima);
    CHECK(names(strict2) == names(support::kStrictReach2));

    const auto weak2 = reachability_to_optima(build_digraph(&f, 4, 2, DigraphMode::weak), optima);
    CHECK(weak2.size() == 24);

    const auto strict3 = reachability_to_optima(build_digraph(&f, 4, 3, DigraphMode::strict), optima);
    CHECK(strict3.size() == 24);

    CHECK_THROWS_AS(reachability_to_optima(build_digraph(&f, 4, 2, DigraphMode::strict), {}),
                    Error);
}

TEST_CASE("local optima enumeration matches a plain scan") {
    const Objective f = support::reference_objective();
    CHECK(names(enumerate_local_optima(f, 4, 2)) == names(support::kLocalOptima2));
    CHECK(names(enumerate_local_optima(f, 4, 3)) == names(support::kLocalOptima3));
    CHECK(names(enumerate_local_optima(f, 4, 4)) == names(support::kLocalOptima3));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Objective g = support::random_table_objective(4, seed);
        for (int k = 2; k <= 4; ++k) {
            std::set<std::string> want;
            for (const auto& v : support::all_perms(4)) {
                bool improving = false;
                for (const auto& u : support::neighbors_oracle(v, k))
                    if (g.evaluate(support::to_perm(u)) < g.evaluate(support::to_perm(v))) {
                        improving = true;
                        break;
                    }
                if (!improving) want.insert(support::to_perm(v).compact());
            }
            CHECK(names(enumerate_local_optima(g, 4, k)) == want);
        }
    }
}

TEST_CASE("arc nesting holds for published and random objectives") {
    const Objective f = support::reference_objective();
    CHECK(verify_nesting(4, 4, &f));
    const Objective inv5 = Objective::inversion(5);
    CHECK(verify_nesting(5, 5, &inv5));
    CHECK(verify_nesting(5, 5)); // moves only
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Objective g = support::random_table_objective(5, seed);
        CHECK(verify_nesting(5, 5, &g));
    }
}

TEST_CASE("landscape report for the published strict k=2 digraph") {
    const Objective f = support::reference_objective();
    const LandscapeReport r = analyze(f, 4, 2, DigraphMode::strict);
    CHECK(r.n == 4);
    CHECK(r.k == 2);
    CHECK(r.mode == DigraphMode::strict);
    CHECK(names(r.global_optima) == std::set<std::string>{"1234"});
    CHECK(names(r.reach_set) == names(support::kStrictReach2));
    CHECK(r.reach_fraction == Value::ratio(5, 24));
    CHECK(names(r.local_optima) == names(support::kLocalOptima2));
    CHECK(r.level_count == 7);
    CHECK(r.max_shortest_path_to_optimum == 2);
    CHECK(r.property1 == false);
    CHECK(r.property2_bound == 6);
    CHECK(r.property2_within_bound);
    CHECK(r.nesting_verified);

    const LandscapeReport w = analyze(f, 4, 2, DigraphMode::weak);
    CHECK(w.reach_fraction == Value(1));
    CHECK(w.property1);

    const LandscapeReport s3 = analyze(f, 4, 3, DigraphMode::strict);
    CHECK(s3.reach_fraction == Value(1));
    CHECK(names(s3.local_optima) == std::set<std::string>{"1234"});

    CHECK_THROWS_AS(analyze(f, 4, 2, DigraphMode::moves), Error);

    const nlohmann::json j = report_to_json(r);
    CHECK(j["reach_fraction"] == "5/24");
    CHECK(j["level_count"] == 7);
    CHECK(j["local_optima"].size() == 13);
}

TEST_CASE("figure numbering is the published row order for n=4") {
    CHECK(figure_number(4, lex_rank(parse_permutation("3124"))) == 1);
    CHECK(figure_number(4, lex_rank(parse_permutation("4321"))) == 12);
    CHECK(figure_number(4, lex_rank(parse_permutation("1234"))) == 13);
    CHECK(figure_number(4, lex_rank(parse_permutation("2413"))) == 23);
    CHECK(figure_number(4, lex_rank(parse_permutation("2431"))) == 24);
    for (std::uint64_t r = 0; r < 24; ++r)
        CHECK(figure_number(4, figure_number(4, r) - 1) == r + 1); // self-inverse as 1-based rows
    for (std::uint64_t r = 0; r < 120; ++r) CHECK(figure_number(5, r) == r + 1);
}

TEST_CASE("DOT export carries the published labels") {
    const Objective f = support::reference_objective();
    std::ostringstream strict;
    export_dot(build_digraph(&f, 4, 2, DigraphMode::strict), &f, strict);
    const std::string s = strict.str();
    CHECK(s.find("digraph") != std::string::npos);
    CHECK(s.find("13: 1234 (f=0)") != std::string::npos);
    CHECK(s.find("23: 2413 (f=2)") != std::string::npos);
    CHECK(s.find("rank=same") != std::string::npos);

    std::ostringstream moves;
    export_dot(build_digraph(nullptr, 4, 2, DigraphMode::moves), nullptr, moves);
    const std::string m = moves.str();
    CHECK(m.find("graph") == 0); // undirected
    CHECK(m.find("--") != std::string::npos);
    CHECK(std::count(m.begin(), m.end(), '\n') > 24 + 36); // nodes + edges, one per line

    CHECK_THROWS_AS(export_dot_file(build_digraph(nullptr, 4, 2, DigraphMode::moves), nullptr,
                                    "/no/such/dir/out.dot"),
                    Error);
}
