#include "nkcloud/evolvability.hpp"

#include <algorithm>
#include <stdexcept>

namespace nkcloud {

std::string_view to_string(Curve curve) {
  switch (curve) {
    case Curve::min:
      return "alpha";
    case Curve::mean:
      return "beta";
    case Curve::max:
      return "gamma";
  }
  return "?";
}

const std::optional<double>& EvolvabilityThresholds::of(Curve c) const {
  switch (c) {
    case Curve::min:
      return alpha;
    case Curve::mean:
      return beta;
    case Curve::max:
      break;
  }
  return gamma;
}

namespace {

double curve_value(const ShapeRow& row, Curve c) {
  switch (c) {
    case Curve::min:
      return row.min;
    case Curve::mean:
      return row.mean;
    case Curve::max:
      break;
  }
  return row.max;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

EvolvabilityThresholds thresholds(const CloudShape& shape) {
  const auto& rows = shape.rows;
  if (rows.size() < 2) throw std::invalid_argument("thresholds need a shape with at least 2 rows");

  EvolvabilityThresholds out;
  for (const Curve c : {Curve::min, Curve::mean, Curve::max}) {
    std::optional<double> first;
    int crossings = 0;
    int prev_sign = 0;  // sign of the last non-zero offset seen
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double d = curve_value(rows[r], c) - rows[r].phi;
      const int s = sign(d);
      if (s == 0) {
        // Touching the diagonal counts once, not again when leaving it.
        if (prev_sign != 0 || r == 0) {
          ++crossings;
          if (!first) first = rows[r].phi;
        }
        prev_sign = 0;
        continue;
      }
      if (r > 0) {
        const double d_prev = curve_value(rows[r - 1], c) - rows[r - 1].phi;
        if (sign(d_prev) == -s) {
          ++crossings;
          if (!first) {
            const double t = d_prev / (d_prev - d);
            first = rows[r - 1].phi + t * (rows[r].phi - rows[r - 1].phi);
          }
        }
      }
      prev_sign = s;
    }
    switch (c) {
      case Curve::min:
        out.alpha = first;
        out.crossings[0] = crossings;
        break;
      case Curve::mean:
        out.beta = first;
        out.crossings[1] = crossings;
        break;
      case Curve::max:
        out.gamma = first;
        out.crossings[2] = crossings;
        break;
    }
    if (crossings > 1) {
      out.warnings.push_back(std::string(to_string(c)) + ": curve crosses the diagonal " + std::to_string(crossings) +
                             " times; first crossing reported");
    }
  }
  return out;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::always_advantageous:
      return "always_advantageous";
    case Regime::mean_advantageous:
      return "mean_advantageous";
    case Regime::mean_deleterious:
      return "mean_deleterious";
    case Regime::always_deleterious:
      return "always_deleterious";
  }
  return "?";
}

Regime classify_regime(double phi, const EvolvabilityThresholds& t) {
  for (const Curve c : {Curve::min, Curve::mean, Curve::max}) {
    if (!t.of(c)) throw std::invalid_argument("classify_regime: threshold " + std::string(to_string(c)) + " is missing");
  }
  if (phi <= *t.alpha) return Regime::always_advantageous;
  if (phi <= *t.beta) return Regime::mean_advantageous;
  if (phi <= *t.gamma) return Regime::mean_deleterious;
  return Regime::always_deleterious;
}

Line weinberger_line(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1) {
    throw std::invalid_argument("weinberger_line requires 0 <= k <= n-1 (n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ")");
  }
  const double ratio = static_cast<double>(k + 1) / n;
  return {1.0 - ratio, 0.5 * ratio};
}

RegressionFit fit_mean_line(const CloudShape& shape) {
  const auto& rows = shape.rows;
  if (rows.size() < 2) throw std::invalid_argument("fit_mean_line needs at least 2 rows");

  double w_sum = 0.0, x_bar = 0.0, y_bar = 0.0;
  for (const ShapeRow& r : rows) {
    const auto w = static_cast<double>(r.count);
    w_sum += w;
    x_bar += w * r.phi;
    y_bar += w * r.mean;
  }
  x_bar /= w_sum;
  y_bar /= w_sum;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const ShapeRow& r : rows) {
    const auto w = static_cast<double>(r.count);
    const double dx = r.phi - x_bar;
    const double dy = r.mean - y_bar;
    sxx += w * dx * dx;
    sxy += w * dx * dy;
    syy += w * dy * dy;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_mean_line: all points share one phi (degenerate fit)");

  const double slope = sxy / sxx;
  const double intercept = y_bar - slope * x_bar;
  double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  r2 = std::clamp(r2, 0.0, 1.0);
  return {slope, intercept, r2};
}

}  // namespace nkcloud
