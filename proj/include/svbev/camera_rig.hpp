#pragma once

#include <array>
#include <string>

#include "svbev/errors.hpp"
#include "svbev/fisheye_camera.hpp"

namespace svbev {

/// The declared ego-frame convention; calibration documents must state it.
inline constexpr const char* kEgoFrameDecl = "x-forward,y-left,z-up,origin=rear-axle-ground";

struct CameraRig {
  std::array<FisheyeCamera, kChannelCount> cameras;

  const FisheyeCamera& camera(Channel c) const { return cameras[channel_index(c)]; }
};

/// Parses and validates a calibration document (JSON text). Throws ConfigError
/// with kind MissingChannel / NonOrthonormalRotation / NonMonotoneDistortion /
/// UnknownField / ... on any violation. Pure: same document, same rig.
CameraRig load_calibration(const std::string& json_text);

CameraRig load_calibration_file(const std::string& path);

/// Reads a whole file into a string; throws ConfigError on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace svbev
