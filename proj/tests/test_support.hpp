#pragma once

// Shared fixtures and independent oracles. Everything here recomputes results
// through a different route than the library (plain vectors, maps, textbook
// rules) so the tests do not just compare the code with itself.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kint/objective.hpp"
#include "kint/permutation.hpp"
#include "kint/value.hpp"

namespace support {

// The published 24-value table for n=4, k=3 (compact form -> distance).
inline const std::vector<std::pair<std::string, int>> kReferenceTable4 = {
    {"1234", 0}, {"1243", 1}, {"1324", 1}, {"1342", 1}, {"1423", 1}, {"1432", 1},
    {"2134", 1}, {"2143", 2}, {"2314", 1}, {"2341", 2}, {"2413", 2}, {"2431", 2},
    {"3124", 1}, {"3142", 2}, {"3214", 1}, {"3241", 2}, {"3412", 2}, {"3421", 2},
    {"4123", 2}, {"4132", 2}, {"4213", 2}, {"4231", 3}, {"4312", 2}, {"4321", 3},
};

// 2-interchange local optima of the reference table, frozen.
inline const std::vector<std::string> kLocalOptima2 = {
    "1234", "1342", "1423", "1432", "2314", "2413", "2431",
    "3124", "3214", "3412", "3421", "4213", "4312",
};

inline const std::vector<std::string> kLocalOptima3 = {"1234"};

// Reach set of the strict k=2 digraph over the reference table, frozen.
inline const std::vector<std::string> kStrictReach2 = {"1234", "1243", "1324", "2134", "2143"};

using Perm = std::vector<int>;

inline Perm to_vec(const kint::Permutation& p) {
    Perm out;
    for (int i = 0; i < p.n(); ++i) out.push_back(p.at(i));
    return out;
}

inline kint::Permutation to_perm(const Perm& v) { return kint::make_permutation(v); }

inline std::vector<Perm> all_perms(int n) {
    Perm base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<Perm> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// Window rearrangements done the pedestrian way: regenerate every ordering of
// the window contents in place.
inline std::vector<Perm> neighbors_oracle(const Perm& s, int k) {
    const int n = static_cast<int>(s.size());
    std::vector<Perm> found;
    for (int start = 0; start + k <= n; ++start) {
        Perm window(s.begin() + start, s.begin() + start + k);
        std::sort(window.begin(), window.end());
        do {
            Perm candidate = s;
            std::copy(window.begin(), window.end(), candidate.begin() + start);
            if (candidate != s) found.push_back(candidate);
        } while (std::next_permutation(window.begin(), window.end()));
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

// BFS distances to target in the k-move graph, keyed by the raw sequence.
inline std::map<Perm, int> bfs_distances_oracle(int n, int k, const Perm& target) {
    std::map<Perm, int> dist;
    std::deque<Perm> frontier{target};
    dist[target] = 0;
    while (!frontier.empty()) {
        Perm u = frontier.front();
        frontier.pop_front();
        for (const auto& v : neighbors_oracle(u, k))
            if (!dist.count(v)) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
    }
    (void)n;
    return dist;
}

inline int inversions_oracle(const Perm& s) {
    int count = 0;
    for (std::size_t j = 1; j < s.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (s[i] > s[j]) ++count;
    return count;
}

inline long long wct_oracle(const std::vector<kint::WctJob>& jobs, const Perm& order) {
    long long t = 0, total = 0;
    for (int j : order) {
        t += jobs[static_cast<std::size_t>(j - 1)].p.num();
        total += jobs[static_cast<std::size_t>(j - 1)].w.num() * t;
    }
    return total;
}

inline long long f2_oracle(const std::vector<kint::Flowshop2Job>& jobs, const Perm& order) {
    long long m1 = 0, m2 = 0;
    for (int j : order) {
        m1 += jobs[static_cast<std::size_t>(j - 1)].a.num();
        m2 = std::max(m2, m1) + jobs[static_cast<std::size_t>(j - 1)].b.num();
    }
    return m2;
}

// Smith's ratio rule: nondecreasing p/w minimizes the weighted completion sum.
inline long long smith_value(const std::vector<kint::WctJob>& jobs) {
    Perm order(jobs.size());
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ja = jobs[static_cast<std::size_t>(a - 1)];
        const auto& jb = jobs[static_cast<std::size_t>(b - 1)];
        // p_a/w_a < p_b/w_b without division
        return ja.p.num() * jb.w.num() < jb.p.num() * ja.w.num();
    });
    return wct_oracle(jobs, order);
}

// Johnson's rule for the two-machine flowshop.
inline long long johnson_makespan(const std::vector<kint::Flowshop2Job>& jobs) {
    Perm first, second;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].a.num() <= jobs[j].b.num())
            first.push_back(static_cast<int>(j) + 1);
        else
            second.push_back(static_cast<int>(j) + 1);
    }
    std::sort(first.begin(), first.end(), [&](int x, int y) {
        return jobs[static_cast<std::size_t>(x - 1)].a.num() <
               jobs[static_cast<std::size_t>(y - 1)].a.num();
    });
    std::sort(second.begin(), second.end(), [&](int x, int y) {
        return jobs[static_cast<std::size_t>(x - 1)].b.num() >
               jobs[static_cast<std::size_t>(y - 1)].b.num();
    });
    first.insert(first.end(), second.begin(), second.end());
    return f2_oracle(jobs, first);
}

template <typename Eval>
long long brute_force_min(int n, Eval eval) {
    long long best = -1;
    for (const auto& order : all_perms(n)) {
        const long long v = eval(order);
        if (best < 0 || v < best) best = v;
    }
    return best;
}

// Local splitmix64 so instance generation does not depend on library code.
inline std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::vector<kint::WctJob> random_wct_instance(int n, std::uint64_t seed) {
    std::uint64_t state = seed;
    std::vector<kint::WctJob> jobs;
    for (int j = 0; j < n; ++j) {
        const long long p = 1 + static_cast<long long>(mix64(state) % 10);
        const long long w = 1 + static_cast<long long>(mix64(state) % 10);
        jobs.push_back({kint::Value(p), kint::Value(w)});
    }
    return jobs;
}

inline std::vector<kint::Flowshop2Job> random_f2_instance(int n, std::uint64_t seed) {
    std::uint64_t state = seed ^ 0xf10c5407ULL;
    std::vector<kint::Flowshop2Job> jobs;
    for (int j = 0; j < n; ++j) {
        const long long a = 1 + static_cast<long long>(mix64(state) % 10);
        const long long b = 1 + static_cast<long long>(mix64(state) % 10);
        jobs.push_back({kint::Value(a), kint::Value(b)});
    }
    return jobs;
}

// Seeded random table objective over n! integer values in [0, 30].
inline kint::Objective random_table_objective(int n, std::uint64_t seed) {
    std::uint64_t state = seed ^ 0x7ab1e5ULL;
    std::vector<std::pair<std::string, kint::Value>> entries;
    for (const auto& p : all_perms(n)) {
        const long long v = static_cast<long long>(mix64(state) % 31);
        entries.emplace_back(to_perm(p).compact(), kint::Value(v));
    }
    return kint::Objective::table(n, entries);
}

inline kint::Objective reference_objective() {
    std::vector<std::pair<std::string, kint::Value>> entries;
    for (const auto& [key, v] : kReferenceTable4) entries.emplace_back(key, kint::Value(v));
    return kint::Objective::table(4, entries,
                                  std::vector<kint::Permutation>{kint::Permutation::identity(4)});
}

} // namespace support
