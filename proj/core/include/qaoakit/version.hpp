#pragma once

namespace qaoakit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qaoakit
