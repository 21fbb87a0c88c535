#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kint {

inline constexpr int kMinOrder = 1;
inline constexpr int kMaxOrder = 20;           // rank arithmetic stays within 64 bits
inline constexpr int kDefaultEnumerationCap = 9; // full-space operations refuse larger n

/**
 * A permutation of {1..n}, the points of the search space.
 * Value semantics, immutable, lexicographically ordered.
 */
class Permutation {
  public:
    Permutation() = default; // empty placeholder; real instances come from the factories
    static Permutation identity(int n);

    int n() const { return static_cast<int>(elems_.size()); }
    int at(int pos) const { return elems_[static_cast<std::size_t>(pos)]; } // 0-based position
    const std::vector<std::uint8_t>& elements() const { return elems_; }

    std::string to_string() const; // "(4,3,1,2)"
    std::string compact() const;   // "4312", n <= 9 only

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

  private:
    friend Permutation make_permutation(const std::vector<int>& seq);
    explicit Permutation(std::vector<std::uint8_t> elems) : elems_(std::move(elems)) {}
    std::vector<std::uint8_t> elems_;
};

// Validates that seq is a bijection on {1..n} with kMinOrder <= n <= kMaxOrder.
Permutation make_permutation(const std::vector<int>& seq);

// Accepts "(4,3,1,2)" and the compact digit form "4312" (n <= 9).
Permutation parse_permutation(std::string_view text);

std::uint64_t factorial(int n); // n <= 20

// Lexicographic rank within the n! permutations of order n; mutually inverse.
std::uint64_t lex_rank(const Permutation& s);
Permutation lex_unrank(int n, std::uint64_t index);

// Number of pairs i < j with s_i > s_j.
int inversion_count(const Permutation& s);

// Throws CapExceeded unless n <= cap; guards full-space enumeration.
void require_within_cap(int n, int cap);

} // namespace kint
