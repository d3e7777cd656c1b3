#pragma once

namespace contracta {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace contracta
