#pragma once

namespace specvol {

inline constexpr const char* kVersion = "1.0.0";

} // namespace specvol
