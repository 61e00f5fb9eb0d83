#pragma once

namespace hartree3d {

// Recorded in every report so outputs can be traced to the code that made them.
inline constexpr const char* kVersion = "hartree3d 0.1.0";

} // namespace hartree3d
