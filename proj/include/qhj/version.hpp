#pragma once

namespace qhj {
inline constexpr const char* kVersion = "0.1.0";
}
