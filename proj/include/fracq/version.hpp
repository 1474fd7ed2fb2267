#pragma once

namespace fracq {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchema = "fracq/1";

}  // namespace fracq
