#pragma once

namespace cvqt {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cvqt
