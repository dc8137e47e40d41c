#pragma once

namespace lanchester {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lanchester
