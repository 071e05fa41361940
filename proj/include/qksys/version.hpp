#pragma once

namespace qksys {

inline constexpr const char* kToolName = "qksys";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qksys
