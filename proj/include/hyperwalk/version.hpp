#pragma once

namespace hyperwalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hyperwalk
