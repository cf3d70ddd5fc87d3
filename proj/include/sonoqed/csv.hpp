#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sonoqed {

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// `#` preamble, one header row, then data rows. Empty cells are allowed.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void comment(const std::string& line) { preamble_.push_back(line); }
    void comment(const std::string& key, const std::string& value) { preamble_.push_back(key + " = " + value); }
    void row(std::vector<std::string> cells);

    void write(std::ostream& os) const;
    // Writes to path, or to fallback when path is empty. Throws IoError.
    void write_to(const std::string& path, std::ostream& fallback) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::string> preamble_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace sonoqed
