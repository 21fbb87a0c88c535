#pragma once

#include <json.hpp>

#include "kint/error.hpp"
#include "kint/permutation.hpp"
#include "kint/value.hpp"

namespace kint {

// Integral values serialize as JSON numbers, non-integral ones as "p/q" strings.
inline nlohmann::json value_to_json(const Value& v) {
    if (v.is_integer()) return v.num();
    return v.to_string();
}

inline Value value_from_json(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Value(j.get<long long>());
    if (j.is_string()) return Value::parse(j.get<std::string>());
    if (j.is_number_float())
        fail(ErrorCode::parse_error, where + ": floating point values are not accepted");
    fail(ErrorCode::parse_error, where + ": expected integer or \"p/q\" string");
}

inline nlohmann::json perms_to_json(const std::vector<Permutation>& ps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : ps) arr.push_back(p.to_string());
    return arr;
}

} // namespace kint
