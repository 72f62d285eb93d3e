#include "app/results.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "app/config.hpp"
#include "xsbfem/error.hpp"

#ifndef XSBFEM_VERSION
#define XSBFEM_VERSION "0.0.0"
#endif

namespace xsbfem::app {

void ResultTable::add(const std::string& case_name, const std::string& quantity, double value) {
  rows.push_back({case_name, quantity, value, std::nullopt, "ok"});
}

const ResultRow* ResultTable::find(const std::string& quantity) const {
  for (const auto& r : rows) {
    if (r.quantity == quantity) return &r;
  }
  return nullptr;
}

double relative_error(double value, double reference) {
  const double d = std::abs(value - reference);
  return reference == 0.0 ? d : d / std::abs(reference);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string header_line(std::uint64_t config_hash) {
  return std::string("# xsbfem ") + XSBFEM_VERSION + " config-hash " + hex_hash(config_hash) + "\n";
}

std::string scalar_csv(const ResultTable& t) {
  std::string out = header_line(t.config_hash);
  out += "case,quantity,value,reference,rel_error,status\n";
  for (const auto& r : t.rows) {
    out += r.case_name + "," + r.quantity + "," + format_number(r.value) + ",";
    if (r.reference) {
      out += format_number(*r.reference) + "," + format_number(relative_error(r.value, *r.reference));
    } else {
      out += ",";
    }
    out += "," + r.status + "\n";
  }
  return out;
}

std::string series_csv(const ResultSeries& s, std::uint64_t config_hash) {
  std::string out = header_line(config_hash);
  for (std::size_t i = 0; i < s.columns.size(); ++i) out += (i ? "," : "") + s.columns[i];
  out += "\n";
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
    out << content;
    if (!out.flush()) {
      std::filesystem::remove(tmp);
      throw Error(ErrorKind::Config, "cannot write '" + path + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace xsbfem::app
