#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "kint/error.hpp"
#include "kint/moves.hpp"
#include "kint/objective.hpp"
#include "kint/permutation.hpp"
#include "test_support.hpp"

using namespace kint;

TEST_CASE("identity and factories validate") {
    Permutation id = Permutation::identity(4);
    CHECK(id.n() == 4);
    CHECK(id.to_string() == "(1,2,3,4)");
    CHECK(id.compact() == "1234");

    CHECK(make_permutation({4, 3, 1, 2}).to_string() == "(4,3,1,2)");
    CHECK_THROWS_AS(make_permutation({1, 1, 2}), Error);
    CHECK_THROWS_AS(make_permutation({1, 3}), Error);    // 2 missing
    CHECK_THROWS_AS(make_permutation({0, 1, 2}), Error); // not on {1..n}
    CHECK_THROWS_AS(make_permutation({}), Error);

    try {
        make_permutation({2, 2, 1});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::duplicate_element);
        CHECK(std::string(e.what()).find("DuplicateElement") != std::string::npos);
    }
}

TEST_CASE("parsing accepts both written forms") {
    CHECK(parse_permutation("(4,3,1,2)") == make_permutation({4, 3, 1, 2}));
    CHECK(parse_permutation("4312") == make_permutation({4, 3, 1, 2}));
    CHECK(parse_permutation("1") == make_permutation({1}));
    CHECK_THROWS_AS(parse_permutation(""), Error);
    CHECK_THROWS_AS(parse_permutation("(1,2"), Error);
    CHECK_THROWS_AS(parse_permutation("12x4"), Error);
    CHECK_THROWS_AS(parse_permutation("(1,2,)"), Error);
}

TEST_CASE("rank and unrank are mutually inverse and lexicographic") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(4) == 24);
    CHECK(factorial(9) == 362880);
    CHECK(factorial(20) == 2432902008176640000ULL);

    CHECK(lex_rank(make_permutation({3, 1, 2, 4})) == 12);
    CHECK(lex_rank(Permutation::identity(5)) == 0);

    for (int n = 1; n <= 6; ++n) {
        const auto perms = support::all_perms(n); // next_permutation emits lex order
        for (std::uint64_t r = 0; r < perms.size(); ++r) {
            const Permutation p = support::to_perm(perms[r]);
            CHECK(lex_rank(p) == r);
            CHECK(lex_unrank(n, r) == p);
        }
    }
    CHECK_THROWS_AS(lex_unrank(4, 24), Error);
}

TEST_CASE("inversion count matches the quadratic oracle") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& v : support::all_perms(n))
            CHECK(inversion_count(support::to_perm(v)) == support::inversions_oracle(v));
}

TEST_CASE("enumeration cap guards the full space") {
    CHECK_NOTHROW(require_within_cap(9, kDefaultEnumerationCap));
    CHECK_THROWS_AS(require_within_cap(10, kDefaultEnumerationCap), Error);
    try {
        require_within_cap(12, 9);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::cap_exceeded);
    }
}

TEST_CASE("window moves apply and invert") {
    const Permutation s = make_permutation({4, 3, 1, 2});
    WindowMove m{2, 3, make_permutation({2, 3, 1})};
    CHECK(apply_move(s, m) == make_permutation({4, 1, 2, 3}));
    CHECK(apply_move(apply_move(s, m), inverse_move(m)) == s);

    // every move over n=5, k=3 round-trips
    const Permutation base = make_permutation({2, 5, 1, 4, 3});
    for (int start = 1; start + 3 - 1 <= 5; ++start)
        for (const auto& arr : support::all_perms(3)) {
            WindowMove move{start, 3, support::to_perm(arr)};
            CHECK(apply_move(apply_move(base, move), inverse_move(move)) == base);
        }

    CHECK_THROWS_AS(validate_move(WindowMove{1, 1, make_permutation({1})}, 4), Error);
    CHECK_THROWS_AS(validate_move(WindowMove{1, 5, Permutation::identity(5)}, 4), Error);
    CHECK_THROWS_AS(validate_move(WindowMove{4, 2, Permutation::identity(2)}, 4), Error);
    CHECK_THROWS_AS(validate_move(WindowMove{2, 3, Permutation::identity(2)}, 4), Error);
    try {
        validate_move(WindowMove{3, 3, Permutation::identity(3)}, 4);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::window_out_of_bounds);
    }
}

TEST_CASE("neighborhoods match the oracle and stay within the bound") {
    for (int n = 2; n <= 5; ++n)
        for (int k = 2; k <= n; ++k)
            for (const auto& v : support::all_perms(n)) {
                const Permutation s = support::to_perm(v);
                const auto got = k_neighborhood(s, k);
                const auto want = support::neighbors_oracle(v, k);
                REQUIRE(got.size() == want.size());
                for (std::size_t i = 0; i < got.size(); ++i)
                    CHECK(support::to_vec(got[i]) == want[i]); // same lex order
                CHECK(got.size() <= neighborhood_bound(n, k));
                CHECK(std::find(got.begin(), got.end(), s) == got.end());
            }
}

TEST_CASE("published k=3 neighborhood of the identity") {
    const auto got = k_neighborhood(Permutation::identity(4), 3);
    std::set<std::string> names;
    for (const auto& p : got) names.insert(p.compact());
    CHECK(names == std::set<std::string>{"1324", "2134", "3214", "2314", "3124", "1243", "1432",
                                         "1342", "1423"});
    CHECK(got.size() == 9); // below the bound 2*(3!-1) = 10: windows overlap
    CHECK(neighborhood_bound(4, 3) == 10);
}

TEST_CASE("k=1 is rejected, nesting of neighborhoods holds") {
    CHECK_THROWS_AS(k_neighborhood(Permutation::identity(4), 1), Error);
    CHECK_THROWS_AS(k_neighborhood(Permutation::identity(4), 5), Error);

    for (int n = 3; n <= 5; ++n)
        for (const auto& v : support::all_perms(n)) {
            const Permutation s = support::to_perm(v);
            for (int k = 2; k + 1 <= n; ++k) {
                const auto smaller = k_neighborhood(s, k);
                const auto larger = k_neighborhood(s, k + 1);
                CHECK(std::includes(larger.begin(), larger.end(), smaller.begin(),
                                    smaller.end())); // V^k subset of V^{k+1}
            }
        }
}

TEST_CASE("neighborhood moves regenerate their points") {
    const Permutation s = make_permutation({2, 4, 1, 5, 3});
    for (int k = 2; k <= 5; ++k) {
        const auto pairs = k_neighborhood_with_moves(s, k);
        const auto plain = k_neighborhood(s, k);
        REQUIRE(pairs.size() == plain.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            CHECK(pairs[i].first == plain[i]);
            CHECK(apply_move(s, pairs[i].second) == pairs[i].first);
            CHECK_NOTHROW(validate_move(pairs[i].second, 5));
        }
    }
}

TEST_CASE("neighbor classification at the published stuck point") {
    const Objective f = support::reference_objective();
    const NeighborPartition part = classify_neighbors(make_permutation({4, 3, 1, 2}), 2, f);
    CHECK(part.improving.empty());
    REQUIRE(part.equal.size() == 2);
    CHECK(part.equal[0].compact() == "3412");
    CHECK(part.equal[1].compact() == "4132");
    REQUIRE(part.worsening.size() == 1);
    CHECK(part.worsening[0].compact() == "4321");
}
