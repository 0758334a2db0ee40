#pragma once

namespace aggregatio {

inline constexpr const char* kVersion = "aggregatio 0.1.0";

}  // namespace aggregatio
