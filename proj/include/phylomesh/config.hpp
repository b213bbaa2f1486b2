#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "phylomesh/island.hpp"
#include "phylomesh/mesh.hpp"
#include "phylomesh/surface.hpp"

namespace phylomesh {

// Full experiment description. Loaded from a flat JSON document with the
// nested sections named below; unknown keys are rejected so typos fail
// fast. The seed is mandatory -- runs are never wall-clock seeded.
struct ExperimentConfig {
  MeshConfig mesh;
  PeConfig pe;
  TreatmentConfig treatment;
  SurfaceConfig surface;
  uint64_t seed = 0;
  uint32_t sample_per_pe = 0;  // defaults to pop_size when absent
  std::optional<uint64_t> subsample_total;
  bool exact_tracking = false;
  bool parallel = false;  // OpenMP PE updates; bit-identical to the serial scheduler

  void validate() const;  // throws ConfigError
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

std::string surface_policy_name(SurfacePolicy policy);
SurfacePolicy surface_policy_from_name(const std::string& name);  // throws ConfigError

}  // namespace phylomesh
