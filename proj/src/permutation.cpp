#include "kint/permutation.hpp"

#include <algorithm>
#include <cctype>

#include "kint/error.hpp"

namespace kint {

Permutation Permutation::identity(int n) {
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
    return make_permutation(seq);
}

std::string Permutation::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(elems_[i]);
    }
    out += ')';
    return out;
}

std::string Permutation::compact() const {
    if (n() > 9) fail(ErrorCode::invalid_params, "compact form requires n <= 9");
    std::string out;
    for (auto e : elems_) out += static_cast<char>('0' + e);
    return out;
}

Permutation make_permutation(const std::vector<int>& seq) {
    const int n = static_cast<int>(seq.size());
    if (n < kMinOrder || n > kMaxOrder)
        fail(ErrorCode::invalid_params,
             "order " + std::to_string(n) + " outside [" + std::to_string(kMinOrder) + ", " +
                 std::to_string(kMaxOrder) + "]");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<std::uint8_t> elems;
    elems.reserve(seq.size());
    for (int v : seq) {
        if (v < 1 || v > n)
            fail(ErrorCode::duplicate_element,
                 "value " + std::to_string(v) + " outside 1.." + std::to_string(n));
        if (seen[static_cast<std::size_t>(v - 1)])
            fail(ErrorCode::duplicate_element, "value " + std::to_string(v) + " repeats");
        seen[static_cast<std::size_t>(v - 1)] = true;
        elems.push_back(static_cast<std::uint8_t>(v));
    }
    return Permutation(std::move(elems));
}

Permutation parse_permutation(std::string_view text) {
    std::vector<int> seq;
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') fail(ErrorCode::parse_error, "unterminated permutation literal");
        std::string body(text.substr(1, text.size() - 2));
        if (!body.empty() && body.back() == ',')
            fail(ErrorCode::parse_error, "empty element in permutation literal");
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t next = body.find(',', pos);
            std::string tok = body.substr(pos, next == std::string::npos ? next : next - pos);
            if (tok.empty()) fail(ErrorCode::parse_error, "empty element in permutation literal");
            for (char c : tok)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    fail(ErrorCode::parse_error, std::string("bad character '") + c + "'");
            seq.push_back(std::stoi(tok));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (body.empty()) fail(ErrorCode::parse_error, "empty permutation literal");
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
                fail(ErrorCode::parse_error, "compact form allows digits 1..9 only");
            seq.push_back(c - '0');
        }
        if (seq.empty()) fail(ErrorCode::parse_error, "empty permutation literal");
    }
    return make_permutation(seq);
}

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20) fail(ErrorCode::index_out_of_range, "factorial domain is 0..20");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t lex_rank(const Permutation& s) {
    const int n = s.n();
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (s.at(j) < s.at(i)) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return rank;
}

Permutation lex_unrank(int n, std::uint64_t index) {
    if (n < kMinOrder || n > kMaxOrder)
        fail(ErrorCode::invalid_params, "order outside supported range");
    if (index >= factorial(n)) fail(ErrorCode::index_out_of_range, "rank exceeds n! - 1");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    std::vector<int> seq;
    seq.reserve(pool.size());
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t f = factorial(i);
        std::size_t digit = static_cast<std::size_t>(index / f);
        index %= f;
        seq.push_back(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return make_permutation(seq);
}

int inversion_count(const Permutation& s) {
    int count = 0;
    for (int i = 0; i < s.n(); ++i)
        for (int j = i + 1; j < s.n(); ++j)
            if (s.at(i) > s.at(j)) ++count;
    return count;
}

void require_within_cap(int n, int cap) {
    if (n > cap)
        fail(ErrorCode::cap_exceeded,
             "n=" + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
}

} // namespace kint
