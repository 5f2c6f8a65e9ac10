#pragma once

#include <string>

#include "mshaz/cascade_model.hpp"
#include "mshaz/curves.hpp"
#include "mshaz/microenv.hpp"
#include "mshaz/route_algebra.hpp"

namespace mshaz {

/// Grid block of a model file; t_max = 0 means "derive from the model".
struct GridSettings {
  double t_max = 0.0;
  int points = kDefaultGridPoints;
  TimeGrid::Spacing spacing = TimeGrid::Spacing::kUniform;
};

struct RiskParams {
  double mutation_prob = 0.0;
  double divisions = 1.0;
  int steps = 1;
  double cells = 1.0;
};

/// A parsed and validated declarative model. Unknown fields are rejected at
/// parse time with the JSON path of the offending field.
struct ModelFile {
  enum class Kind { kSystem, kCascade, kMicroEnv, kLifetimeRisk };

  int schema_version = 1;
  Kind kind = Kind::kSystem;
  SystemSpec system;        // kind == kSystem
  CascadeSpec cascade;      // kind == kCascade
  MicroEnvModel microenv;   // kind == kMicroEnv
  RiskParams risk;          // kind == kLifetimeRisk
  GridSettings grid;
};

std::string kind_name(ModelFile::Kind kind);

/// Parse and validate a model document; throws ConfigurationError with a
/// $.path diagnostic on any schema violation.
ModelFile parse_model_json(const std::string& text);
ModelFile load_model_file(const std::string& path);

/// Evaluation grid: overrides beat the file's grid block, which beats the
/// automatic horizon (the 1 - 1e-6 survival quantile estimate, or the small-t
/// regime bound for microenv models).
TimeGrid model_grid(const ModelFile& model, double t_max_override = 0.0,
                    int points_override = 0);

/// Curves for system, cascade, and microenv models.
CurveSet eval_model_curves(const ModelFile& model, const TimeGrid& grid);

}  // namespace mshaz
