#include "sonoqed/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sonoqed/errors.hpp"

namespace sonoqed {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

} // namespace

void CsvTable::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("csv: row width differs from header");
    rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& os) const {
    for (const auto& c : preamble_) os << "# " << c << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << quote(cells[i]);
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
}

void CsvTable::write_to(const std::string& path, std::ostream& fallback) const {
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open output file '" + path + "' for writing");
    write(f);
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

} // namespace sonoqed
