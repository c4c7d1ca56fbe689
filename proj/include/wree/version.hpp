#pragma once

namespace wree {
inline constexpr const char* version = "1.0.0";
}
