#include "pseudosun/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "pseudosun/cli/config.hpp"
#include "pseudosun/errors.hpp"

#ifndef PSEUDOSUN_VERSION
#define PSEUDOSUN_VERSION "unknown"
#endif

namespace pseudosun::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string header_text(const OutputHeader& header) {
  std::string out = "# pseudosun " PSEUDOSUN_VERSION "\n";
  out += "# command=" + header.command + "\n";
  out += "# config_fnv1a64=" + header.config_hash + "\n";
  for (const auto& [k, v] : header.extra) out += "# " + k + "=" + v + "\n";
  return out;
}

CsvTable::CsvTable(OutputHeader header, std::vector<std::string> columns)
    : header_(std::move(header)), columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw InvalidInputError("csv row has " + std::to_string(values.size()) + " values, expected " +
                            std::to_string(columns_.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw NumericalError("non-finite value in column " + columns_[i]);
    if (i) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += '\n';
  ++rows_;
}

std::string CsvTable::str() const {
  std::string out = header_text(header_);
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  return out + body_;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

std::string gnuplot_script(const std::filesystem::path& csv, const std::vector<std::string>& columns,
                           const std::string& title) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set datafile commentschars '#'\n";
  s += "set key autotitle columnhead\n";
  s += "set title '" + title + "'\n";
  s += "set xlabel '" + columns.front() + "'\n";
  s += "plot ";
  for (std::size_t i = 1; i < columns.size(); ++i) {
    if (i > 1) s += ", \\\n     ";
    s += "'" + csv.filename().string() + "' using 1:" + std::to_string(i + 1) + " with lines";
  }
  s += "\n";
  return s;
}

}  // namespace pseudosun::cli
