#include "nkcloud/csv_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nkcloud {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_phi(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  return v;
}

// Reads a CSV with the given header, handing each row's cells to `row`.
template <class RowFn>
void read_table(std::istream& in, const std::string& header, std::size_t columns, RowFn row) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::invalid_argument("expected CSV header '" + header + "'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != columns) throw std::invalid_argument("CSV row has wrong column count: " + line);
    row(cells);
  }
}

}  // namespace

void write_shape_csv(std::ostream& out, const CloudShape& shape) {
  out << "phi,min,mean,max,std,count\n";
  for (const ShapeRow& r : shape.rows) {
    out << format_phi(r.phi) << ',' << format_real(r.min) << ',' << format_real(r.mean) << ','
        << format_real(r.max) << ',' << format_real(r.std) << ',' << r.count << '\n';
  }
}

CloudShape read_shape_csv(std::istream& in) {
  CloudShape shape;
  read_table(in, "phi,min,mean,max,std,count", 6, [&](const std::vector<std::string>& c) {
    shape.rows.push_back({parse_real(c[0]), parse_real(c[1]), parse_real(c[2]), parse_real(c[3]), parse_real(c[4]),
                          std::stoull(c[5])});
  });
  return shape;
}

void write_thresholds_csv(std::ostream& out, const EvolvabilityThresholds& t) {
  out << "curve,value,found\n";
  for (const Curve c : {Curve::min, Curve::mean, Curve::max}) {
    const auto& v = t.of(c);
    out << to_string(c) << ',' << (v ? format_real(*v) : std::string()) << ',' << (v ? "true" : "false") << '\n';
  }
}

EvolvabilityThresholds read_thresholds_csv(std::istream& in) {
  EvolvabilityThresholds t;
  read_table(in, "curve,value,found", 3, [&](const std::vector<std::string>& c) {
    std::optional<double> v;
    if (c[2] == "true") {
      v = parse_real(c[1]);
    } else if (c[2] != "false" || !c[1].empty()) {
      throw std::invalid_argument("malformed thresholds row for " + c[0]);
    }
    if (c[0] == "alpha") {
      t.alpha = v;
    } else if (c[0] == "beta") {
      t.beta = v;
    } else if (c[0] == "gamma") {
      t.gamma = v;
    } else {
      throw std::invalid_argument("unknown curve '" + c[0] + "'");
    }
  });
  return t;
}

void write_points_csv(std::ostream& out, const std::vector<std::pair<double, double>>& points) {
  out << "f,f_border\n";
  for (const auto& [f, fb] : points) out << format_real(f) << ',' << format_real(fb) << '\n';
}

std::vector<std::pair<double, double>> read_points_csv(std::istream& in) {
  std::vector<std::pair<double, double>> points;
  read_table(in, "f,f_border", 2,
             [&](const std::vector<std::string>& c) { points.emplace_back(parse_real(c[0]), parse_real(c[1])); });
  return points;
}

void write_trajectory_csv(std::ostream& out, const AverageTrajectory& avg) {
  out << "generation,mean_f,mean_f_border,std_f\n";
  for (const AveragePoint& p : avg.points) {
    out << p.generation << ',' << format_real(p.mean_f) << ',' << format_real(p.mean_f_border) << ','
        << format_real(p.std_f) << '\n';
  }
}

AverageTrajectory read_trajectory_csv(std::istream& in) {
  AverageTrajectory avg;
  read_table(in, "generation,mean_f,mean_f_border,std_f", 4, [&](const std::vector<std::string>& c) {
    avg.points.push_back({std::stoi(c[0]), parse_real(c[1]), parse_real(c[2]), parse_real(c[3])});
  });
  return avg;
}

void write_runs_csv(std::ostream& out, const std::vector<Trajectory>& runs) {
  out << "run,generation,f,f_border\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const TrajectoryPoint& p : runs[r].points) {
      out << r << ',' << p.generation << ',' << format_real(p.f) << ',' << format_real(p.f_border) << '\n';
    }
  }
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows) {
  out << "phi,count\n";
  for (const HistogramRow& r : rows) out << format_phi(r.phi) << ',' << r.count << '\n';
}

std::vector<HistogramRow> read_histogram_csv(std::istream& in) {
  std::vector<HistogramRow> rows;
  read_table(in, "phi,count", 2,
             [&](const std::vector<std::string>& c) { rows.push_back({parse_real(c[0]), std::stoull(c[1])}); });
  return rows;
}

}  // namespace nkcloud
