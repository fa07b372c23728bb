#pragma once

namespace floqsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace floqsim
