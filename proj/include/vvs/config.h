#pragma once

#include <string>

#include "vvs/sim.h"

namespace vvs {

// Everything one experiment file declares. See configs/default.json and the
// README for the schema.
struct ExperimentConfig {
  SessionConfig session;
  TileBox content_bounds{Vec3(-0.4, 0.0, -0.3), Vec3(0.4, 1.8, 0.3)};
  Vec3 content_center = Vec3(0.0, 0.9, 0.0);
};

// Parses a JSON config. Relative table paths resolve against `base_dir`.
// Unknown keys and invalid values are InputError.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

}  // namespace vvs
