#pragma once

namespace imlab {

inline constexpr const char* kToolName = "imethod-lab";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace imlab
