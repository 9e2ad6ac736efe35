#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nkcloud/cloud.hpp"
#include "nkcloud/evolvability.hpp"
#include "nkcloud/heuristic.hpp"
#include "nkcloud/optima.hpp"

namespace nkcloud {

// Column formats: phi with 6 decimals; every other real with 17 significant
// digits so values read back bit-exactly.

void write_shape_csv(std::ostream& out, const CloudShape& shape);
CloudShape read_shape_csv(std::istream& in);

void write_thresholds_csv(std::ostream& out, const EvolvabilityThresholds& t);
EvolvabilityThresholds read_thresholds_csv(std::istream& in);

void write_points_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points);
std::vector<std::pair<double, double>> read_points_csv(std::istream& in);

void write_trajectory_csv(std::ostream& out, const AverageTrajectory& avg);
AverageTrajectory read_trajectory_csv(std::istream& in);

void write_runs_csv(std::ostream& out, const std::vector<Trajectory>& runs);

void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows);
std::vector<HistogramRow> read_histogram_csv(std::istream& in);

/// Shortest-faithful text for a double (17 significant digits).
std::string format_real(double v);

}  // namespace nkcloud
