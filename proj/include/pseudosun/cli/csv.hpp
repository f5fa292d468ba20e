#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace pseudosun::cli {

/// Provenance lines written as `# key=value` at the top of every output.
struct OutputHeader {
  std::string command;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> extra;
};

std::string format_double(double v);

/// Comma-separated table with a comment header; values use round-trip precision.
class CsvTable {
 public:
  CsvTable(OutputHeader header, std::vector<std::string> columns);

  /// Throws NumericalError on a non-finite value.
  void add_row(const std::vector<double>& values);

  std::size_t rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::string str() const;

 private:
  OutputHeader header_;
  std::vector<std::string> columns_;
  std::string body_;
  std::size_t rows_ = 0;
};

std::string header_text(const OutputHeader& header);

/// Writes through a temporary sibling and renames; throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Gnuplot script that plots every data column of `csv` against the first.
std::string gnuplot_script(const std::filesystem::path& csv, const std::vector<std::string>& columns,
                           const std::string& title);

}  // namespace pseudosun::cli
