#pragma once

namespace schain {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace schain
