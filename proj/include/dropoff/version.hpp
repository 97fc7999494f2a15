#pragma once

namespace dropoff {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dropoff
