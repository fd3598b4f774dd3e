#pragma once

#include "specmap/propagation.hpp"
#include "specmap/scene.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace specmap {

/// Everything a plain-text `key = value` config file can set.
struct ExperimentConfig {
    SceneConfig scene;
    PropagationParams propagation;
    double measurement_noise_sigma = 0.0; ///< dB, 0 keeps observations exact

    void validate() const;
};

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// unknown keys and malformed values throw std::invalid_argument naming the
/// line. Keys not present keep their defaults.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fully resolved key/value view, in a fixed order, for run manifests.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& config);

} // namespace specmap
