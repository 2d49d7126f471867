#pragma once

namespace qnash {

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace qnash
