#include "nlscat/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nlscat/errors.hpp"

namespace nlscat {

namespace {

std::ofstream open_out(const std::string& path, std::ios_base::openmode mode = std::ios_base::out) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_double_cell(const std::string& cell, const std::string& path) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": malformed number '" + cell + "'");
  }
  while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
  if (pos != cell.size()) throw std::runtime_error(path + ": malformed number '" + cell + "'");
  return v;
}

long parse_long_cell(const std::string& cell, const std::string& path) {
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(cell, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(path + ": malformed integer '" + cell + "'");
  }
  while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
  if (pos != cell.size()) throw std::runtime_error(path + ": malformed integer '" + cell + "'");
  return v;
}

void expect_header(std::ifstream& in, const std::string& expected, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected)
    throw std::runtime_error(path + ": expected header '" + expected + "', got '" + line + "'");
}

}  // namespace

void write_field_csv(const std::string& path, const Grid2D& grid, const ComplexField& field) {
  if (field.size() != static_cast<std::size_t>(grid.point_count()))
    throw InvariantViolation("write_field_csv: field size does not match grid");
  std::ofstream out = open_out(path);
  out << "i,j,x,y,re,im\n";
  const int half = grid.halfcount();
  for (int j = -half; j <= half; ++j) {
    for (int i = -half; i <= half; ++i) {
      const Vec2 p = grid.point(i, j);
      const std::complex<double> v = field[grid.index(i, j)];
      out << i << ',' << j << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(v.real()) << ','
          << fmt(v.imag()) << '\n';
    }
  }
}

void write_real_field_csv(const std::string& path, const Grid2D& grid, const RealField& field) {
  if (field.size() != static_cast<std::size_t>(grid.point_count()))
    throw InvariantViolation("write_real_field_csv: field size does not match grid");
  std::ofstream out = open_out(path);
  out << "i,j,value\n";
  const int half = grid.halfcount();
  for (int j = -half; j <= half; ++j)
    for (int i = -half; i <= half; ++i)
      out << i << ',' << j << ',' << fmt(field[grid.index(i, j)]) << '\n';
}

RealField read_real_field_csv(const std::string& path, const Grid2D& grid) {
  std::ifstream in = open_in(path);
  expect_header(in, "i,j,value", path);
  RealField field(grid.point_count(), 0.0);
  std::vector<bool> seen(grid.point_count(), false);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 3) throw std::runtime_error(path + ": expected 3 columns, got line '" + line + "'");
    const long i = parse_long_cell(cells[0], path);
    const long j = parse_long_cell(cells[1], path);
    const int half = grid.halfcount();
    if (i < -half || i > half || j < -half || j > half)
      throw std::runtime_error(path + ": node index out of range in line '" + line + "'");
    const std::size_t flat = grid.index(static_cast<int>(i), static_cast<int>(j));
    if (seen[flat]) throw std::runtime_error(path + ": duplicate node in line '" + line + "'");
    seen[flat] = true;
    field[flat] = parse_double_cell(cells[2], path);
  }
  for (bool s : seen)
    if (!s) throw std::runtime_error(path + ": missing grid nodes");
  return field;
}

void write_pattern_csv(const std::string& path, const FarFieldPattern& pattern) {
  std::ofstream out = open_out(path);
  out << "phi,re,im\n";
  for (int m = 0; m < pattern.size(); ++m)
    out << fmt(pattern.angle(m)) << ',' << fmt(pattern.values[m].real()) << ','
        << fmt(pattern.values[m].imag()) << '\n';
}

void write_density_csv(const std::string& path, const Density& density) {
  std::ofstream out = open_out(path);
  out << "n,re,im\n";
  for (std::size_t idx = 0; idx < density.coefficients.size(); ++idx) {
    const int n = density.min_mode() + static_cast<int>(idx);
    out << n << ',' << fmt(density.coefficients[idx].real()) << ','
        << fmt(density.coefficients[idx].imag()) << '\n';
  }
}

Density read_density_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(in, "n,re,im", path);
  std::vector<std::complex<double>> coeffs;
  long expected_n = std::numeric_limits<long>::min();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 3) throw std::runtime_error(path + ": expected 3 columns, got line '" + line + "'");
    const long n = parse_long_cell(cells[0], path);
    if (expected_n != std::numeric_limits<long>::min() && n != expected_n)
      throw std::runtime_error(path + ": modes must be contiguous ascending");
    expected_n = n + 1;
    coeffs.emplace_back(parse_double_cell(cells[1], path), parse_double_cell(cells[2], path));
  }
  if (coeffs.empty()) throw std::runtime_error(path + ": no modes");
  const long first = expected_n - static_cast<long>(coeffs.size());
  if (first != -static_cast<long>(coeffs.size()) / 2)
    throw std::runtime_error(path + ": modes must run from -N/2 to N/2-1");
  return Density(std::move(coeffs));
}

std::string point_status_name(PointStatus status) {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Degenerate: return "degenerate";
    case PointStatus::NoContraction: return "no_contraction";
    case PointStatus::SolverFailure: return "solver_failure";
  }
  return "unknown";
}

void write_indicator_csv(const std::string& path, const IndicatorMap& map, bool initial) {
  std::ofstream out = open_out(path);
  out << "i,j,x,y,value,evals,status\n";
  const Grid2D& grid = map.sampling;
  const int half = grid.halfcount();
  for (int j = -half; j <= half; ++j) {
    for (int i = -half; i <= half; ++i) {
      const Vec2 p = grid.point(i, j);
      const IndicatorPoint& pt = map.points[grid.index(i, j)];
      const double value = initial ? pt.initial : pt.optimized;
      out << i << ',' << j << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(value) << ','
          << pt.evals << ',' << point_status_name(pt.status) << '\n';
    }
  }
}

void write_indicator_jsonl(const std::string& path, const IndicatorMap& map) {
  std::ofstream out = open_out(path);
  const Grid2D& grid = map.sampling;
  const int half = grid.halfcount();
  auto json_number = [](double v) { return std::isfinite(v) ? fmt(v) : std::string("null"); };
  for (int j = -half; j <= half; ++j) {
    for (int i = -half; i <= half; ++i) {
      const Vec2 p = grid.point(i, j);
      const IndicatorPoint& pt = map.points[grid.index(i, j)];
      out << "{\"i\":" << i << ",\"j\":" << j << ",\"x\":" << fmt(p.x) << ",\"y\":" << fmt(p.y)
          << ",\"initial\":" << json_number(pt.initial)
          << ",\"value\":" << json_number(pt.optimized) << ",\"evals\":" << pt.evals
          << ",\"status\":\"" << point_status_name(pt.status) << "\",\"ms\":" << fmt(pt.milliseconds)
          << "}\n";
    }
  }
}

void write_increments_jsonl(const std::string& path, const std::vector<double>& increments) {
  std::ofstream out = open_out(path);
  for (std::size_t s = 0; s < increments.size(); ++s)
    out << "{\"sweep\":" << (s + 1) << ",\"increment\":" << fmt(increments[s]) << "}\n";
}

void write_pgm(const std::string& path, const Grid2D& grid, const std::vector<double>& values) {
  if (values.size() != static_cast<std::size_t>(grid.point_count()))
    throw InvariantViolation("write_pgm: value count does not match grid");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo <= hi)) {  // no finite values at all
    lo = 0.0;
    hi = 0.0;
  }
  const double span = hi - lo;

  const int n = grid.points_per_axis();
  std::ofstream out = open_out(path, std::ios_base::out | std::ios_base::binary);
  out << "P5\n" << n << ' ' << n << "\n255\n";
  const int half = grid.halfcount();
  for (int j = half; j >= -half; --j) {  // top row = j = +half
    for (int i = -half; i <= half; ++i) {
      const double v = values[grid.index(i, j)];
      unsigned char byte = 0;
      if (std::isfinite(v) && span > 0.0) {
        const double t = (v - lo) / span;
        byte = static_cast<unsigned char>(std::lround(255.0 * std::min(1.0, std::max(0.0, t))));
      }
      out.put(static_cast<char>(byte));
    }
  }

  std::ofstream side = open_out(path + ".txt");
  side << "min " << fmt(lo) << "\nmax " << fmt(hi) << "\n";
}

}  // namespace nlscat
