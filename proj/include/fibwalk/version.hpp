#pragma once

namespace fibwalk {

inline constexpr const char* kArtifactName = "fibwalk";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace fibwalk
