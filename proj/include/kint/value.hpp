#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <string>

#include "kint/error.hpp"

namespace kint {

/**
 * Exact objective value: a rational number with exact comparison.
 * No floating point anywhere; tie detection relies on exact equality.
 */
class Value {
  public:
    Value() : r_(0) {}
    Value(long long v) : r_(v) {} // NOLINT: implicit by design
    Value(int v) : r_(v) {}       // NOLINT

    static Value ratio(long long num, long long den) {
        if (den == 0) fail(ErrorCode::invalid_params, "zero denominator");
        return Value(boost::rational<long long>(num, den));
    }

    // Parses "3", "-3" or "3/4".
    static Value parse(const std::string& text);

    long long num() const { return r_.numerator(); }
    long long den() const { return r_.denominator(); }
    bool is_integer() const { return r_.denominator() == 1; }

    Value operator+(const Value& o) const { return Value(r_ + o.r_); }
    Value operator-(const Value& o) const { return Value(r_ - o.r_); }
    Value operator*(const Value& o) const { return Value(r_ * o.r_); }
    Value& operator+=(const Value& o) {
        r_ += o.r_;
        return *this;
    }

    bool operator==(const Value& o) const { return r_ == o.r_; }
    bool operator!=(const Value& o) const { return r_ != o.r_; }
    bool operator<(const Value& o) const { return r_ < o.r_; }
    bool operator<=(const Value& o) const { return r_ <= o.r_; }
    bool operator>(const Value& o) const { return r_ > o.r_; }
    bool operator>=(const Value& o) const { return r_ >= o.r_; }

    std::string to_string() const {
        if (is_integer()) return std::to_string(num());
        return std::to_string(num()) + "/" + std::to_string(den());
    }

  private:
    explicit Value(boost::rational<long long> r) : r_(r) {}
    boost::rational<long long> r_;
};

} // namespace kint
