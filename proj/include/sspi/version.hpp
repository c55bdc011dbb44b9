#pragma once

namespace sspi {

inline constexpr const char* kToolName = "sspi";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace sspi
