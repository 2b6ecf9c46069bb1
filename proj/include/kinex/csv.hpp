#ifndef KINEX_CSV_HPP
#define KINEX_CSV_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kinex {

// Writer for the output tables: comma separators, one header row, LF line
// endings, floats in shortest round-trip form. No quoting — none of the
// emitted values contain commas.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);

  CsvBuilder& cell(std::string_view v);
  CsvBuilder& cell(double v);
  CsvBuilder& cell(std::int64_t v);
  CsvBuilder& cell(std::uint64_t v);
  void end_row();  // throws if the cell count differs from the header

  const std::string& text() const { return text_; }
  std::string take() { return std::move(text_); }

 private:
  std::string text_;
  std::size_t columns_;
  std::size_t cells_in_row_ = 0;
};

// Parsed CSV as strings; columns are looked up by header name.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws naming the column
  std::vector<double> numeric_column(std::string_view name) const;
};

// Strict reader for the project's own files: every row must have the
// header's column count. Quoting is not supported.
CsvTable parse_csv(std::string_view text);

}  // namespace kinex

#endif  // KINEX_CSV_HPP
