#pragma once

namespace ellterm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ellterm
