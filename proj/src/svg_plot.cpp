#include "nkcloud/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace nkcloud {

namespace {

constexpr double kWidth = 640, kHeight = 640, kMargin = 60;

struct Frame {
  double lo, hi;

  double x(double v) const { return kMargin + (v - lo) / (hi - lo) * (kWidth - 2 * kMargin); }
  double y(double v) const { return kHeight - kMargin - (v - lo) / (hi - lo) * (kHeight - 2 * kMargin); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void polyline(std::ostream& out, const Frame& fr, const std::vector<std::pair<double, double>>& pts,
              const char* stroke, double width, const char* extra = "") {
  if (pts.empty()) return;
  out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\" " << extra
      << " points=\"";
  for (const auto& [a, b] : pts) out << num(fr.x(a)) << ',' << num(fr.y(b)) << ' ';
  out << "\"/>\n";
}

}  // namespace

void write_svg_plot(std::ostream& out, const PlotSpec& plot) {
  if (plot.shape == nullptr || plot.shape->rows.empty()) throw std::invalid_argument("plot needs a non-empty shape");
  const auto& rows = plot.shape->rows;

  double lo = 1.0, hi = 0.0;
  for (const ShapeRow& r : rows) {
    lo = std::min({lo, r.phi, r.min, r.mean - r.std});
    hi = std::max({hi, r.phi, r.max, r.mean + r.std});
  }
  if (plot.trajectory != nullptr) {
    for (const AveragePoint& p : plot.trajectory->points) {
      lo = std::min({lo, p.mean_f, p.mean_f_border});
      hi = std::max({hi, p.mean_f, p.mean_f_border});
    }
  }
  const double pad = 0.05 * std::max(hi - lo, 1e-3);
  const Frame fr{std::max(0.0, lo - pad), std::min(1.0, hi + pad)};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(plot.title)
      << "</text>\n";

  // Axes with five ticks.
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
      << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = fr.lo + (fr.hi - fr.lo) * i / 4.0;
    out << "<text x=\"" << num(fr.x(v)) << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"middle\">"
        << num(v) << "</text>\n"
        << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(fr.y(v) + 4) << "\" text-anchor=\"end\">" << num(v)
        << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20 << "\" text-anchor=\"middle\">fitness f</text>\n"
      << "<text x=\"18\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kHeight / 2 << ")\">bordering fitness</text>\n";

  // +-1 std band around FC_mean.
  out << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
  for (const ShapeRow& r : rows) out << num(fr.x(r.phi)) << ',' << num(fr.y(r.mean + r.std)) << ' ';
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out << num(fr.x(it->phi)) << ',' << num(fr.y(it->mean - it->std)) << ' ';
  }
  out << "\"/>\n";

  polyline(out, fr, {{fr.lo, fr.lo}, {fr.hi, fr.hi}}, "black", 1, "stroke-dasharray=\"4 3\"");
  if (plot.reference_line) {
    const Line& l = *plot.reference_line;
    polyline(out, fr, {{fr.lo, l(fr.lo)}, {fr.hi, l(fr.hi)}}, "#31a354", 1, "stroke-dasharray=\"8 4\"");
  }

  std::vector<std::pair<double, double>> mins, means, maxs;
  for (const ShapeRow& r : rows) {
    mins.emplace_back(r.phi, r.min);
    means.emplace_back(r.phi, r.mean);
    maxs.emplace_back(r.phi, r.max);
  }
  polyline(out, fr, mins, "#3182bd", 1);
  polyline(out, fr, maxs, "#de2d26", 1);
  polyline(out, fr, means, "#08306b", 1.5);

  if (plot.trajectory != nullptr) {
    std::vector<std::pair<double, double>> path;
    for (const AveragePoint& p : plot.trajectory->points) path.emplace_back(p.mean_f, p.mean_f_border);
    polyline(out, fr, path, "#ff7f00", 2.5);
  }

  if (plot.thresholds != nullptr) {
    for (const Curve c : {Curve::min, Curve::mean, Curve::max}) {
      if (const auto& v = plot.thresholds->of(c)) {
        out << "<circle cx=\"" << num(fr.x(*v)) << "\" cy=\"" << num(fr.y(*v))
            << "\" r=\"4\" fill=\"black\"/>\n<text x=\"" << num(fr.x(*v) + 6) << "\" y=\"" << num(fr.y(*v) - 6)
            << "\">" << to_string(c) << "</text>\n";
      }
    }
  }

  // Legend.
  const char* labels[] = {"FC_min", "FC_mean (+-1 std)", "FC_max", "diagonal"};
  const char* colors[] = {"#3182bd", "#08306b", "#de2d26", "black"};
  for (int i = 0; i < 4; ++i) {
    const double ly = kMargin + 16 + 16 * i;
    out << "<line x1=\"" << kMargin + 10 << "\" y1=\"" << ly << "\" x2=\"" << kMargin + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << colors[i] << "\" stroke-width=\"2\"/><text x=\"" << kMargin + 36 << "\" y=\""
        << ly + 4 << "\">" << labels[i] << "</text>\n";
  }
  if (plot.trajectory != nullptr) {
    const double ly = kMargin + 16 + 16 * 4;
    out << "<line x1=\"" << kMargin + 10 << "\" y1=\"" << ly << "\" x2=\"" << kMargin + 30 << "\" y2=\"" << ly
        << "\" stroke=\"#ff7f00\" stroke-width=\"2.5\"/><text x=\"" << kMargin + 36 << "\" y=\"" << ly + 4
        << "\">average GHC trajectory</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace nkcloud
