#pragma once

namespace rdml {

inline constexpr const char* kVersion = "0.1.0";

} // namespace rdml
