#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "metastab/analyze.hpp"
#include "metastab/error.hpp"

namespace metastab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void fail(std::size_t row, const std::string& what) {
  throw schema_error("CSV row " + std::to_string(row) + ": " + what);
}

}  // namespace

std::vector<Net> ingest_csv_text(std::string_view text, const MetricSpace& space, const CsvOptions& options) {
  if (options.rounding_grid && !(*options.rounding_grid > 0.0))
    throw precondition_error("rounding grid must be positive");

  std::vector<std::vector<double>> rows;
  std::size_t columns = 0;
  std::size_t row_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++row_number;
    if (trim(line).empty()) {
      if (pos > text.size()) break;
      fail(row_number, "empty row");
    }
    const auto cells = split_row(line);
    if (rows.empty()) columns = cells.size();
    if (cells.size() != columns)
      fail(row_number, "expected " + std::to_string(columns) + " cells, found " + std::to_string(cells.size()));
    std::vector<double> values;
    values.reserve(cells.size());
    for (std::string_view cell : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
        fail(row_number, "non-numeric cell '" + std::string(cell) + "'");
      if (options.rounding_grid) v = std::round(v / *options.rounding_grid) * *options.rounding_grid;
      values.push_back(v);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw schema_error("CSV input has no rows");

  const std::size_t dim = space.dimension();
  if (columns % dim != 0)
    throw schema_error("CSV has " + std::to_string(columns) + " columns, not a multiple of the space dimension " +
                       std::to_string(dim));

  const DirectedWindow w = DirectedWindow::omega(rows.size());
  std::vector<Net> nets;
  for (std::size_t group = 0; group < columns / dim; ++group) {
    std::vector<Point> values;
    values.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double* cell = &rows[r][group * dim];
      Point p;
      switch (space.kind()) {
        case SpaceKind::binary:
          if (cell[0] != 0.0 && cell[0] != 1.0) fail(r + 1, "binary value must be 0 or 1");
          p = Bit{static_cast<std::uint8_t>(cell[0])};
          break;
        case SpaceKind::unit_interval:
        case SpaceKind::real_line:
          p = cell[0];
          break;
        case SpaceKind::euclidean:
          p = Coordinates(cell, cell + dim);
          break;
        case SpaceKind::table:
          if (cell[0] < 0.0 || cell[0] != std::floor(cell[0])) fail(r + 1, "table symbol must be a nonnegative integer");
          p = Symbol{static_cast<std::uint32_t>(cell[0])};
          break;
      }
      if (!space.contains(p)) fail(r + 1, "value is not a point of the " + std::string(to_string(space.kind())) + " space");
      values.push_back(std::move(p));
    }
    nets.emplace_back(w, space, std::move(values));
  }
  return nets;
}

std::vector<Net> ingest_csv(const std::filesystem::path& path, const MetricSpace& space, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot open CSV file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_csv_text(buffer.str(), space, options);
}

}  // namespace metastab
