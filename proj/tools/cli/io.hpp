#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qspacing/spectral.hpp"
#include "qspacing/surmise.hpp"

namespace qspacing::cli {

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

/// One value per line, newline-terminated.
void write_values(std::ostream& out, std::span<const double> values);

/// CSV with header `bin_left,bin_right,density`.
void write_histogram(std::ostream& out, const HistogramDensity& hist);

/// CSV with header `s,pdf,cdf` on s = 0, step, ..., s_max (inclusive).
void write_law_table(std::ostream& out, const SpacingLaw& law, double s_max, double step);

/// Reads one value per line; blank lines and `#` comments are skipped.
/// Throws DataError naming the line for unparsable or negative values.
[[nodiscard]] std::vector<double> read_values(std::istream& in, const std::string& source);
[[nodiscard]] std::vector<double> read_values(const std::filesystem::path& path);

}  // namespace qspacing::cli
