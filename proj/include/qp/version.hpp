#pragma once

namespace qp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qp
