#pragma once

namespace braidsurf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace braidsurf
