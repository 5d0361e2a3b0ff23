#pragma once

namespace corrbits {

inline constexpr const char* kToolName = "corrbits";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace corrbits
