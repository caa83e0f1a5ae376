#pragma once

namespace ptsusy {
inline constexpr const char* version = "0.1.0";
}
