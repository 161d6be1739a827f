#pragma once

namespace flr {

inline constexpr const char* kLibraryVersion = "0.1.0";
// Bumped whenever an artifact file format (metrics, dataset, checkpoint) changes shape.
inline constexpr const char* kArtifactFormatVersion = "1";

}  // namespace flr
