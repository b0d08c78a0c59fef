#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lamens/error.hpp"
#include "lamens/stepper.hpp"

namespace lamens {

enum class InitialCondition {
  TaylorGreen2D,
  TaylorGreen3D,
  AbcFlow,
  GradientColeHopf,
  RandomSolenoidal,
  SnapshotFile,
};

std::string_view to_string(InitialCondition ic) noexcept;

struct RunConfig {
  int dim = 2;
  int grid_n = 64;
  double mu = 0.1;
  std::optional<double> lambda;
  std::vector<double> lambda_list;
  double t_end = 1.0;
  StepperConfig stepper;
  InitialCondition initial_condition = InitialCondition::TaylorGreen2D;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  double spectrum_slope = -5.0 / 3.0;
  std::string snapshot_path;
  std::string output_dir = "lamens_run";

  bool sweep_mode() const noexcept { return !lambda_list.empty(); }
  /// lambda_list in sweep mode, otherwise the single lambda.
  std::vector<double> lambdas() const;
};

struct ConfigViolation {
  ErrorKind kind;
  std::string key;
  std::string message;
};

/// Carries every problem found in a configuration document, not just the
/// first. kind() is UnknownKey if any key was unknown, else ConstraintViolation.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<ConfigViolation> violations);
  const std::vector<ConfigViolation>& violations() const noexcept { return violations_; }

private:
  std::vector<ConfigViolation> violations_;
};

/// Parses a flat "key = value" document ('#' starts a comment). Lists are
/// written as [a, b, c] or a,b,c. Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical "key = value" rendering; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

}  // namespace lamens
