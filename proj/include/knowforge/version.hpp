#pragma once

namespace knowforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace knowforge
