#pragma once

namespace wqed {

inline constexpr const char* version = "0.1.0";

}  // namespace wqed
