#pragma once

namespace qwall {

inline constexpr const char* version = "1.0.0";

} // namespace qwall
