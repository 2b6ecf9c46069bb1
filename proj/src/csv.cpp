#include "kinex/csv.hpp"

#include <stdexcept>

#include "kinex/io_util.hpp"

namespace kinex {

CsvBuilder::CsvBuilder(const std::vector<std::string>& header)
    : columns_(header.size()) {
  if (header.empty()) {
    throw std::invalid_argument("CsvBuilder: header must not be empty");
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

CsvBuilder& CsvBuilder::cell(std::string_view v) {
  if (cells_in_row_ > 0) text_ += ',';
  text_ += v;
  ++cells_in_row_;
  return *this;
}

CsvBuilder& CsvBuilder::cell(double v) { return cell(format_double(v)); }

CsvBuilder& CsvBuilder::cell(std::int64_t v) { return cell(std::to_string(v)); }

CsvBuilder& CsvBuilder::cell(std::uint64_t v) { return cell(std::to_string(v)); }

void CsvBuilder::end_row() {
  if (cells_in_row_ != columns_) {
    throw std::logic_error("CsvBuilder: row has " +
                           std::to_string(cells_in_row_) + " cells, expected " +
                           std::to_string(columns_));
  }
  text_ += '\n';
  cells_in_row_ = 0;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument("csv: no column named '" + std::string(name) +
                              "'");
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
  const std::size_t idx = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    out.push_back(parse_double(row[idx]));
  }
  return out;
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return cells;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    if (line.empty() && pos >= text.size()) break;  // trailing newline
    auto cells = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size()) {
        throw std::invalid_argument(
            "csv: line " + std::to_string(line_no) + " has " +
            std::to_string(cells.size()) + " cells, expected " +
            std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (table.header.empty()) {
    throw std::invalid_argument("csv: empty input");
  }
  return table;
}

}  // namespace kinex
