#pragma once

namespace wpt {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace wpt
