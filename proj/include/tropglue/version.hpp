#pragma once

namespace tropglue {

inline constexpr const char *version = "0.1.0";

} // namespace tropglue
