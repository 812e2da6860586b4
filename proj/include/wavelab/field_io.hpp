#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wavelab/grid_field.hpp"

namespace wavelab::io {

/// Decimal text with 17 significant digits; round-trips every double.
std::string format_real(double v);

/// Writes the `x,value` snapshot format, one grid point per row.
void write_field_csv(const Field& f, std::ostream& out);
void write_field_csv(const Field& f, const std::filesystem::path& path);

/// Parses the `x,value` format. The grid is recovered from the row count and
/// the spacing of the first two abscissae.
Field read_field_csv(std::istream& in);

/// Minimal numeric table writer used for invariant and trajectory logs.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::span<const double> row);
    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }

    void write(std::ostream& out) const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace wavelab::io
