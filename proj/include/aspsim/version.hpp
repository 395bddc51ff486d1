#pragma once

namespace aspsim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace aspsim
