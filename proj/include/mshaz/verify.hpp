#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mshaz/model_file.hpp"

namespace mshaz {

struct VerifyOptions {
  int64_t samples = 100000;
  uint64_t seed = 12345;
  /// Overrides the default sup-norm / relative tolerances when > 0.
  /// KS thresholds always scale as 1.63/sqrt(samples).
  double tolerance = 0.0;
  /// Negative-control knob: scales the analytic side of every oracle pair.
  double corrupt = 1.0;
  double t_max = 0.0;
  int points = 0;
};

struct VerifyLine {
  std::string name;
  std::string metric;  ///< "sup-norm", "KS", "rel-gap", ...
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool informational = false;  ///< reported, not gating
};

struct VerifyReport {
  std::vector<VerifyLine> lines;

  bool all_pass() const {
    for (const auto& l : lines) {
      if (!l.informational && !l.pass) return false;
    }
    return true;
  }

  std::string text() const;
};

/// Cross-check the model along every evaluation path it supports
/// (closed form vs numeric convolution, analytic CDF vs Monte Carlo,
/// polynomial vs simplex quadrature, exact risk vs power-law approximation)
/// and report one line per oracle pair.
VerifyReport verify_model(const ModelFile& model, const VerifyOptions& options);

}  // namespace mshaz
