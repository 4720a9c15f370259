#include "dcmwalk/core/csv.hpp"

#include <sstream>

namespace dcmwalk {

CsvTable CsvTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  {
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(table.columns.size());
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv: ragged row in '" + path + "'");
    table.rows.push_back(std::move(row));
  }
  return table;
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace dcmwalk
