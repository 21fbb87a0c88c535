#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kint/permutation.hpp"

namespace kint {

class Objective;

/**
 * A k-interchange: the window [start, start+k-1] (1-based) is reordered by
 * `arrangement`, a permutation of {1..k}: new_window[i] = old_window[arrangement[i]].
 * The identity arrangement maps every permutation to itself.
 */
struct WindowMove {
    int start = 1;
    int k = 2;
    Permutation arrangement;

    std::string to_string() const;
};

// Validates 2 <= k <= n, start + k - 1 <= n, arrangement order k.
void validate_move(const WindowMove& m, int n);

Permutation apply_move(const Permutation& s, const WindowMove& m);

// Same window, inverse arrangement: apply_move(apply_move(s, m), inverse_move(m)) == s.
WindowMove inverse_move(const WindowMove& m);

/**
 * V^k(s): every permutation other than s obtainable by one k-interchange,
 * deduplicated across windows, in lexicographic order.
 * (The closed neighborhood is V^k(s) plus s itself; only V^k is exposed.)
 */
std::vector<Permutation> k_neighborhood(const Permutation& s, int k);

// As above, paired with the first generating move (windows left to right,
// arrangements in lexicographic order).
std::vector<std::pair<Permutation, WindowMove>> k_neighborhood_with_moves(const Permutation& s,
                                                                          int k);

// Upper bound (n-k+1) * (k! - 1) on |V^k(s)|.
std::uint64_t neighborhood_bound(int n, int k);

/** V^k(s) split by objective value against f(s); the three sets are disjoint. */
struct NeighborPartition {
    std::vector<Permutation> improving; // f(x) < f(s), the set V^{k<}
    std::vector<Permutation> equal;     // f(x) = f(s); improving + equal = V^{k<=}
    std::vector<Permutation> worsening; // f(x) > f(s)
};

NeighborPartition classify_neighbors(const Permutation& s, int k, const Objective& f);

} // namespace kint
