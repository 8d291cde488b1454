#pragma once

namespace canon {

inline constexpr const char* version_tag = "canon-1.0.0";

}  // namespace canon
