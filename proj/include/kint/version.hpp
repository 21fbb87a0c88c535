#pragma once

namespace kint {

inline constexpr const char* kToolName = "kint";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace kint
