#pragma once

#include <string>
#include <vector>

#include "nlscat/forward.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/herglotz.hpp"
#include "nlscat/reconstruction.hpp"

namespace nlscat {

// All writers emit a mandatory header row; numbers are printed with %.17g so
// doubles survive a write/read round trip bit-exactly.

// Columns: i,j,x,y,re,im — one row per grid node, i fastest.
void write_field_csv(const std::string& path, const Grid2D& grid, const ComplexField& field);

// Columns: i,j,value.
void write_real_field_csv(const std::string& path, const Grid2D& grid, const RealField& field);
RealField read_real_field_csv(const std::string& path, const Grid2D& grid);

// Columns: phi,re,im — one row per observation angle.
void write_pattern_csv(const std::string& path, const FarFieldPattern& pattern);

// Columns: n,re,im — one row per mode, ascending n.
void write_density_csv(const std::string& path, const Density& density);
Density read_density_csv(const std::string& path);

// Columns: i,j,x,y,value,evals,status with status one of
// ok|degenerate|no_contraction|solver_failure.  `initial` selects the
// pre-refinement column.
void write_indicator_csv(const std::string& path, const IndicatorMap& map, bool initial);

std::string point_status_name(PointStatus status);

// One JSON object per line: per-point value, evals, status, and timing.
void write_indicator_jsonl(const std::string& path, const IndicatorMap& map);

// One JSON object per line: {"sweep": s, "increment": v}.
void write_increments_jsonl(const std::string& path, const std::vector<double>& increments);

// Binary 8-bit PGM (P5), width = height = points per axis, top row j = +J.
// Values are min-max normalized; non-finite entries map to 0.  The scale is
// recorded in a sidecar text file at path + ".txt".
void write_pgm(const std::string& path, const Grid2D& grid, const std::vector<double>& values);

}  // namespace nlscat
