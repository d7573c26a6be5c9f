#include "trapnls/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trapnls/errors.hpp"

namespace trapnls {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
                     std::string schema_token)
    : os_(os), ncols_(columns.size()), schema_(std::move(schema_token)) {
  for (const std::string& c : columns) os_ << csv_escape(c) << ',';
  os_ << "schema\r\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != ncols_)
    throw ConfigError("csv_shape_mismatch: row width differs from the header");
  for (const std::string& f : fields) os_ << csv_escape(f) << ',';
  os_ << schema_ << "\r\n";
}

void CsvWriter::row_values(const std::vector<double>& values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (const double v : values) fields.push_back(fmt17(v));
  row(fields);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& field, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw ConfigError(std::string("grid_file_malformed: bad ") + what + " value '" +
                      field + "'");
  return v;
}

// the coordinates must be -L + i*dx on a power-of-two grid; recover (L, N)
// and reject anything off-lattice
GridSpec infer_axis(const std::vector<double>& coords) {
  const int n = static_cast<int>(coords.size());
  if (n < 2) throw ConfigError("grid_file_malformed: need at least two samples");
  const double dx = coords[1] - coords[0];
  if (!(dx > 0.0))
    throw ConfigError("grid_file_nonuniform: coordinates must increase");
  GridSpec spec;
  spec.dim = 1;
  spec.points_per_axis = n;
  spec.half_width = 0.5 * dx * n;
  if (std::abs(coords[0] + spec.half_width) > 1e-9 * spec.half_width)
    throw ConfigError("grid_file_nonuniform: box is not centered at the origin");
  for (int i = 0; i < n; ++i)
    if (std::abs(coords[i] - (coords[0] + i * dx)) > 1e-9 * std::max(1.0, spec.half_width))
      throw ConfigError("grid_file_nonuniform: coordinate spacing drifts");
  spec.validate();
  return spec;
}

} // namespace

GridState read_grid_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("grid_file_missing: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("grid_file_malformed: empty file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  int dim = 0;
  if (line == "x,re,im")
    dim = 1;
  else if (line == "x,y,re,im")
    dim = 2;
  else
    throw ConfigError("grid_file_malformed: header must be x,re,im or x,y,re,im");

  std::vector<double> xs, ys;
  std::vector<std::complex<double>> values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (static_cast<int>(f.size()) != dim + 2)
      throw ConfigError("grid_file_malformed: row width differs from the header");
    xs.push_back(parse_double(f[0], "x"));
    if (dim == 2) ys.push_back(parse_double(f[1], "y"));
    values.emplace_back(parse_double(f[dim], "re"), parse_double(f[dim + 1], "im"));
  }
  if (values.empty()) throw ConfigError("grid_file_malformed: no data rows");

  GridState state;
  if (dim == 1) {
    state.spec = infer_axis(xs);
  } else {
    const auto total = static_cast<std::int64_t>(values.size());
    const int n = static_cast<int>(std::llround(std::sqrt(double(total))));
    if (std::int64_t(n) * n != total)
      throw ConfigError("grid_file_malformed: 2-d sample count is not a square");
    // y cycles fastest; the leading block carries one full sweep of the axis
    std::vector<double> axis(ys.begin(), ys.begin() + n);
    state.spec = infer_axis(axis);
    state.spec.dim = 2;
    for (std::int64_t k = 0; k < total; ++k) {
      if (std::abs(xs[k] - axis[k / n]) > 1e-9 * std::max(1.0, state.spec.half_width) ||
          std::abs(ys[k] - axis[k % n]) > 1e-9 * std::max(1.0, state.spec.half_width))
        throw ConfigError("grid_file_nonuniform: samples leave the row-major lattice");
    }
  }
  state.values = Eigen::Map<const Eigen::VectorXcd>(values.data(), values.size());
  if (state.spec.size() != state.values.size())
    throw ConfigError("grid_file_malformed: sample count does not fill the grid");
  return state;
}

void write_grid_csv(const std::string& path, const GridState& u) {
  u.spec.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("grid_file_missing: cannot write '" + path + "'");
  const Eigen::VectorXd axis = u.spec.axis();
  const int n = u.spec.points_per_axis;
  if (u.spec.dim == 1) {
    out << "x,re,im\r\n";
    for (int i = 0; i < n; ++i)
      out << fmt17(axis[i]) << ',' << fmt17(u.values[i].real()) << ','
          << fmt17(u.values[i].imag()) << "\r\n";
  } else {
    out << "x,y,re,im\r\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::complex<double> v = u.values[std::int64_t(i) * n + j];
        out << fmt17(axis[i]) << ',' << fmt17(axis[j]) << ',' << fmt17(v.real())
            << ',' << fmt17(v.imag()) << "\r\n";
      }
  }
  if (!out) throw ConfigError("grid_file_missing: write failed for '" + path + "'");
}

} // namespace trapnls
