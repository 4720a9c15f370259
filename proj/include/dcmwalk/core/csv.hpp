#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcmwalk {

// Minimal CSV writer: one header row, then numeric rows. Values are written
// with enough digits to round-trip doubles so exported traces can be used to
// recompute aggregates exactly.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns)
      : out_(path), ncols_(columns.size()) {
    if (!out_) throw std::runtime_error("csv: cannot open '" + path + "'");
    out_.precision(17);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out_ << ",";
      out_ << columns[i];
    }
    out_ << "\n";
  }

  void row(const std::vector<double>& values) {
    if (values.size() != ncols_)
      throw std::runtime_error("csv: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ",";
      out_ << values[i];
    }
    out_ << "\n";
  }

  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
  std::size_t ncols_;
};

// Tiny CSV reader used by tests and the aggregate-recompute audit.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  static CsvTable load(const std::string& path);
  int column_index(const std::string& name) const;
};

}  // namespace dcmwalk
