#pragma once

namespace decosim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace decosim
