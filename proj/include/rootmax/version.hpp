#pragma once

namespace rootmax {

inline constexpr const char* kVersion = "rootmax 0.1.0";

}  // namespace rootmax
