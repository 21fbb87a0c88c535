#include "kint/value.hpp"

#include <cstdlib>

namespace kint {

Value Value::parse(const std::string& text) {
    if (text.empty()) fail(ErrorCode::parse_error, "empty value");
    std::size_t slash = text.find('/');
    auto parse_int = [&](const std::string& part) -> long long {
        if (part.empty()) fail(ErrorCode::parse_error, "bad value '" + text + "'");
        char* end = nullptr;
        errno = 0;
        long long v = std::strtoll(part.c_str(), &end, 10);
        if (errno != 0 || end != part.c_str() + part.size())
            fail(ErrorCode::parse_error, "bad value '" + text + "'");
        return v;
    };
    if (slash == std::string::npos) return Value(parse_int(text));
    long long num = parse_int(text.substr(0, slash));
    long long den = parse_int(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::parse_error, "zero denominator in '" + text + "'");
    return Value::ratio(num, den);
}

} // namespace kint
