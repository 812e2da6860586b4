#include "wavelab/field_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

namespace wavelab::io {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
    return out;
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

void write_field_csv(const Field& f, std::ostream& out) {
    out << "x,value\n";
    for (int j = 0; j < f.grid().n(); ++j) {
        out << format_real(f.grid().x(j)) << ',' << format_real(f[j]) << '\n';
    }
}

void write_field_csv(const Field& f, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_field_csv(f, out);
}

Field read_field_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "x,value") {
        throw std::runtime_error("read_field_csv: missing 'x,value' header");
    }
    std::vector<double> xs;
    std::vector<double> vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("read_field_csv: malformed row: " + line);
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 2) throw std::runtime_error("read_field_csv: too few rows");
    const int n = static_cast<int>(xs.size());
    const Grid1D grid(n, n * (xs[1] - xs[0]));
    return Field(grid, std::move(vs));
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

void CsvTable::add_row(std::span<const double> row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument(
            fmt::format("CsvTable: row of {} values for {} columns", row.size(), header_.size()));
    }
    rows_.emplace_back(row.begin(), row.end());
}

void CsvTable::write(std::ostream& out) const {
    for (std::size_t c = 0; c < header_.size(); ++c) out << (c ? "," : "") << header_[c];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_real(row[c]);
        out << '\n';
    }
}

void CsvTable::write(const std::filesystem::path& path) const {
    auto out = open_for_write(path);
    write(out);
}

}  // namespace wavelab::io
