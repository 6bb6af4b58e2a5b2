#pragma once

namespace bernlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bernlab
