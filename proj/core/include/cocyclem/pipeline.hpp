#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cocyclem/cocycle.hpp"
#include "cocyclem/phantom.hpp"

namespace cocyclem {

struct PipelineConfig {
  /// Inline mixture; when empty, `molecule_path` or the default molecule.
  std::vector<GaussianComponent> molecule;
  std::string molecule_path;
  std::size_t n_clusters = 20;
  std::size_t per_cluster = 3;
  /// When set, n_images uniform directions replace the clusters.
  std::optional<std::size_t> n_images;
  /// In-plane angles restricted to multiples of 2*pi/n_theta.
  bool grid_angles = true;
  PolarGrid grid{};
  double pixel_sigma = 0.0;
  /// nullopt is "auto" (every distinct distance is a candidate). One value is
  /// used as is; several are swept and the largest acceptable one is used.
  std::optional<std::vector<double>> epsilons;
  double tol_tie = 1e-6;
  double tol_cocycle = 1e-16;  // on delta
  double tol_defect = 0.05;    // distance of an Euler defect from an integer
  double tol_coboundary = 1e-9;
  double energy_floor = 1e-4;
  std::size_t bundle_steps = 0;
  SyncMethod sync_method = SyncMethod::Spectral;
  std::uint64_t seed = 1;
  std::string output_dir = "cocyclem-out";
  std::size_t threads = 1;

  void validate() const;
  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

nlohmann::json config_to_json(const PipelineConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig config_from_json(const nlohmann::json& j);

/// COCYCLEM_SEED and COCYCLEM_OUT, when set, replace seed and output_dir.
void apply_env_overrides(PipelineConfig& cfg);

/// A failure inside a pipeline stage. `numeric()` separates numeric
/// failures from invalid input.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message, bool numeric);
  const std::string& stage() const { return stage_; }
  bool numeric() const { return numeric_; }

 private:
  std::string stage_;
  bool numeric_;
};

struct PipelineReport {
  nlohmann::json json;
  std::filesystem::path report_path;
  double epsilon = 0.0;
  double delta = 0.0;
  bool is_coboundary = false;
  std::vector<double> per_triangle;
  std::array<std::size_t, 3> betti{};
  std::optional<std::vector<std::int64_t>> euler;
};

/// Writes stack.pis, ground_truth.json, comparisons.json, complex.json,
/// cocycle.json, bundle.json (when an Euler class is computed) and
/// report.json into cfg.output_dir. On failure the report records the stage
/// and the outputs written so far are kept.
PipelineReport run_pipeline(const PipelineConfig& cfg);

const char* library_version();

}  // namespace cocyclem
