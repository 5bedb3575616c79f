#pragma once

namespace rsig {
inline constexpr const char* kVersion = "0.1.0";
}
