#pragma once

namespace ptkit {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace ptkit
