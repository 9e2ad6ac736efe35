#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nkcloud/cloud.hpp"
#include "nkcloud/evolvability.hpp"
#include "nkcloud/heuristic.hpp"

namespace nkcloud {

struct PlotSpec {
  std::string title;
  const CloudShape* shape = nullptr;
  const EvolvabilityThresholds* thresholds = nullptr;
  const AverageTrajectory* trajectory = nullptr;
  std::optional<Line> reference_line;  // e.g. the Weinberger prediction
};

/// Self-contained SVG: FC_min/FC_mean/FC_max, a +-1 std band around FC_mean,
/// the diagonal, and optionally an average trajectory and a reference line.
void write_svg_plot(std::ostream& out, const PlotSpec& plot);

}  // namespace nkcloud
