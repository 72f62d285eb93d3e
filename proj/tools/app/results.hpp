#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xsbfem::app {

struct ResultRow {
  std::string case_name;
  std::string quantity;
  double value = 0.0;
  std::optional<double> reference;
  std::string status = "ok";
};

/// A named series, e.g. angular samples or a stress profile.
struct ResultSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ResultTable {
  std::uint64_t config_hash = 0;
  std::vector<ResultRow> rows;
  std::vector<ResultSeries> series;

  void add(const std::string& case_name, const std::string& quantity, double value);
  const ResultRow* find(const std::string& quantity) const;
};

/// |value - reference| / |reference|, or the absolute difference for a zero reference.
double relative_error(double value, double reference);

/// 17 significant digits, so a CSV round trip is exact.
std::string format_number(double v);

/// Shortest form (%g) for case names.
std::string short_number(double v);

/// Header line shared by every output file.
std::string header_line(std::uint64_t config_hash);

/// case,quantity,value,reference,rel_error,status
std::string scalar_csv(const ResultTable& t);
std::string series_csv(const ResultSeries& s, std::uint64_t config_hash);

/// Writes to a sibling temporary and renames, so a failed run leaves no partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace xsbfem::app
