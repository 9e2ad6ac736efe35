#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nkcloud/cloud.hpp"

namespace nkcloud {

enum class Curve { min, mean, max };

std::string_view to_string(Curve curve);

/// Where FC_min, FC_mean and FC_max first meet the diagonal f~ = f.
struct EvolvabilityThresholds {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;

  /// Number of sign changes found per curve (min, mean, max). Only the first
  /// crossing is reported; any curve with more than one is also listed in
  /// `warnings`.
  int crossings[3] = {0, 0, 0};
  std::vector<std::string> warnings;

  const std::optional<double>& of(Curve c) const;
  bool unique_crossings() const { return crossings[0] == 1 && crossings[1] == 1 && crossings[2] == 1; }
};

/// First sign change of (curve - phi) in ascending phi, located by linear
/// interpolation between the bracketing rows. A row lying exactly on the
/// diagonal is itself the crossing. Needs at least two rows.
EvolvabilityThresholds thresholds(const CloudShape& shape);

enum class Regime {
  always_advantageous,  // phi <= alpha
  mean_advantageous,    // alpha < phi <= beta
  mean_deleterious,     // beta < phi <= gamma
  always_deleterious,   // gamma < phi
};

std::string_view to_string(Regime regime);

/// Throws when any of the three thresholds is missing.
Regime classify_regime(double phi, const EvolvabilityThresholds& t);

struct Line {
  double slope;
  double intercept;

  double operator()(double x) const { return slope * x + intercept; }
};

/// Weinberger's mean-neighbor law for NK landscapes:
/// f~_mean = (1 - (K+1)/N) f + 0.5 (K+1)/N.
Line weinberger_line(int n, int k);

struct RegressionFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Count-weighted least squares of FC_mean against phi.
RegressionFit fit_mean_line(const CloudShape& shape);

}  // namespace nkcloud
