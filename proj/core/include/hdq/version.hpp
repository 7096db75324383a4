#pragma once

namespace hdq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hdq
