#pragma once

namespace kising {

inline constexpr const char* version = "1.0.0";

}  // namespace kising
