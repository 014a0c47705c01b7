#include "unicluster_cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace unicluster::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse(const std::string& cell, std::size_t line_no) {
  T value{};
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw IoError("line " + std::to_string(line_no) + ": cannot parse '" + cell + "'");
  }
  return value;
}

}  // namespace

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV input");
  const auto header = split(line);
  int label_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") label_col = static_cast<int>(c);
  }
  const std::size_t d = header.size() - (label_col >= 0 ? 1 : 0);
  if (d == 0) throw IoError("CSV has no feature columns");

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t line_no = 1, rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                    " fields, got " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<int>(c) == label_col) {
        labels.push_back(parse<int>(cells[c], line_no));
      } else {
        const double v = parse<double>(cells[c], line_no);
        if (!std::isfinite(v)) throw IoError("line " + std::to_string(line_no) + ": non-finite value");
        values.push_back(v);
      }
    }
    ++rows;
  }
  if (rows == 0) throw IoError("CSV has no data rows");
  RowMatrix points = Eigen::Map<RowMatrix>(values.data(), static_cast<Eigen::Index>(rows),
                                           static_cast<Eigen::Index>(d));
  if (label_col >= 0) return Dataset(std::move(points), std::move(labels));
  return Dataset(std::move(points));
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_csv(in);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t j = 0; j < data.dim(); ++j) out << (j ? "," : "") << 'x' << j;
  if (data.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dim(); ++j) {
      out << (j ? "," : "") << format_double(data.points()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    if (data.has_labels()) out << ',' << data.labels()[i];
    out << '\n';
  }
}

}  // namespace unicluster::cli
