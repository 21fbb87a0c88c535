#include "kint/moves.hpp"

#include <algorithm>
#include <set>

#include "kint/error.hpp"
#include "kint/objective.hpp"

namespace kint {

std::string WindowMove::to_string() const {
    return "window[" + std::to_string(start) + ".." + std::to_string(start + k - 1) +
           "] <- " + arrangement.to_string();
}

void validate_move(const WindowMove& m, int n) {
    if (m.k < 2 || m.k > n)
        fail(ErrorCode::invalid_k, "k must satisfy 2 <= k <= n (got k=" + std::to_string(m.k) +
                                       ", n=" + std::to_string(n) + ")");
    if (m.start < 1 || m.start + m.k - 1 > n)
        fail(ErrorCode::window_out_of_bounds,
             "window [" + std::to_string(m.start) + ".." + std::to_string(m.start + m.k - 1) +
                 "] not within 1.." + std::to_string(n));
    if (m.arrangement.n() != m.k)
        fail(ErrorCode::invalid_params, "arrangement order does not match k");
}

Permutation apply_move(const Permutation& s, const WindowMove& m) {
    validate_move(m, s.n());
    std::vector<int> seq(static_cast<std::size_t>(s.n()));
    for (int i = 0; i < s.n(); ++i) seq[static_cast<std::size_t>(i)] = s.at(i);
    const int base = m.start - 1;
    for (int i = 0; i < m.k; ++i)
        seq[static_cast<std::size_t>(base + i)] = s.at(base + m.arrangement.at(i) - 1);
    return make_permutation(seq);
}

WindowMove inverse_move(const WindowMove& m) {
    std::vector<int> inv(static_cast<std::size_t>(m.k));
    for (int i = 0; i < m.k; ++i) inv[static_cast<std::size_t>(m.arrangement.at(i) - 1)] = i + 1;
    return WindowMove{m.start, m.k, make_permutation(inv)};
}

namespace {

template <typename Visit>
void for_each_neighbor(const Permutation& s, int k, Visit&& visit) {
    const int n = s.n();
    if (k < 2 || k > n)
        fail(ErrorCode::invalid_k, "k must satisfy 2 <= k <= n (got k=" + std::to_string(k) +
                                       ", n=" + std::to_string(n) + ")");
    std::vector<int> arr(static_cast<std::size_t>(k));
    for (int start = 1; start + k - 1 <= n; ++start) {
        for (int i = 0; i < k; ++i) arr[static_cast<std::size_t>(i)] = i + 1;
        while (std::next_permutation(arr.begin(), arr.end())) {
            WindowMove m{start, k, make_permutation(arr)};
            visit(apply_move(s, m), m);
        }
    }
}

} // namespace

std::vector<Permutation> k_neighborhood(const Permutation& s, int k) {
    std::set<Permutation> out;
    for_each_neighbor(s, k, [&](Permutation p, const WindowMove&) { out.insert(std::move(p)); });
    return {out.begin(), out.end()};
}

std::vector<std::pair<Permutation, WindowMove>> k_neighborhood_with_moves(const Permutation& s,
                                                                          int k) {
    std::set<Permutation> seen;
    std::vector<std::pair<Permutation, WindowMove>> out;
    for_each_neighbor(s, k, [&](Permutation p, const WindowMove& m) {
        if (seen.insert(p).second) out.emplace_back(std::move(p), m);
    });
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::uint64_t neighborhood_bound(int n, int k) {
    return static_cast<std::uint64_t>(n - k + 1) * (factorial(k) - 1);
}

NeighborPartition classify_neighbors(const Permutation& s, int k, const Objective& f) {
    NeighborPartition part;
    const Value fs = f.evaluate(s);
    for (auto& x : k_neighborhood(s, k)) {
        const Value fx = f.evaluate(x);
        if (fx < fs)
            part.improving.push_back(std::move(x));
        else if (fx == fs)
            part.equal.push_back(std::move(x));
        else
            part.worsening.push_back(std::move(x));
    }
    return part;
}

} // namespace kint
