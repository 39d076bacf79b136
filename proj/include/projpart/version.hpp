#pragma once

namespace projpart {

inline constexpr const char* version = "0.1.0";

}  // namespace projpart
