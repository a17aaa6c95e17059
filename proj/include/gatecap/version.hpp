#pragma once

namespace gatecap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gatecap
