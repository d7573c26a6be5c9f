#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "trapnls/grid.hpp"

namespace trapnls {

// shortest exact decimal round-trip we promise: 17 significant digits
std::string fmt17(double);

// RFC 4180 quoting (only when the field needs it)
std::string csv_escape(const std::string&);

// CSV with CRLF line endings and a trailing `schema` column carrying a version
// token (e.g. "propagate.v1") on every row, so each file self-describes.
class CsvWriter {
 public:
  CsvWriter(std::ostream&, const std::vector<std::string>& columns,
            std::string schema_token);
  void row(const std::vector<std::string>& fields);
  void row_values(const std::vector<double>& values);

 private:
  std::ostream& os_;
  std::size_t ncols_;
  std::string schema_;
};

// Grid snapshots as CSV: columns "x,re,im" (1d) or "x,y,re,im" (2d), header
// included, coordinates in row-major order (first axis outermost). The reader
// reconstructs the GridSpec from the coordinates and rejects non-uniform input.
GridState read_grid_csv(const std::string& path);
void write_grid_csv(const std::string& path, const GridState&);

} // namespace trapnls
