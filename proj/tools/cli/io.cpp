#include "cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <system_error>

#include "cli/errors.hpp"

namespace qspacing::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_values(std::ostream& out, std::span<const double> values) {
    for (double v : values) out << format_double(v) << '\n';
}

void write_histogram(std::ostream& out, const HistogramDensity& hist) {
    out << "bin_left,bin_right,density\n";
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        out << format_double(hist.bin_edges[i]) << ',' << format_double(hist.bin_edges[i + 1]) << ','
            << format_double(hist.density[i]) << '\n';
    }
}

void write_law_table(std::ostream& out, const SpacingLaw& law, double s_max, double step) {
    out << "s,pdf,cdf\n";
    const auto rows = static_cast<long>(std::floor(s_max / step + 1e-9)) + 1;
    for (long i = 0; i < rows; ++i) {
        const double s = static_cast<double>(i) * step;
        out << format_double(s) << ',' << format_double(law.pdf(s)) << ',' << format_double(law.cdf(s)) << '\n';
    }
}

std::vector<double> read_values(std::istream& in, const std::string& source) {
    std::vector<double> values;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        double v = 0.0;
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end) {
            throw DataError(source + ":" + std::to_string(lineno) + ": cannot parse '" + std::string(begin, end) +
                            "' as a number");
        }
        if (!std::isfinite(v) || v < 0.0) {
            throw DataError(source + ":" + std::to_string(lineno) + ": spacing must be finite and nonnegative, got " +
                            std::string(begin, end));
        }
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_values(in, path.string());
}

}  // namespace qspacing::cli
