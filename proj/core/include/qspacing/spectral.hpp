#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qspacing {

/// Real symmetric (orthogonal class) or complex Hermitian (unitary class) matrix.
using HermitianMatrix = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

/// Ascending list of raw energy levels, at least two of them.
class RealSpectrum {
public:
    explicit RealSpectrum(std::vector<double> levels);

    [[nodiscard]] std::span<const double> levels() const noexcept { return levels_; }
    [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return levels_[i]; }

private:
    std::vector<double> levels_;
};

/// Nonnegative dimensionless spacings rescaled to unit sample mean.
class UnfoldedSpacings {
public:
    /// Rescales raw nonnegative spacings to unit mean. Throws std::invalid_argument
    /// on empty input, negative or non-finite entries, or an all-zero sequence.
    static UnfoldedSpacings normalize(std::vector<double> raw, std::size_t clipped = 0);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    /// Number of negative unfolded spacings that were clipped to zero.
    [[nodiscard]] std::size_t clipped() const noexcept { return clipped_; }
    [[nodiscard]] double clipped_fraction() const noexcept {
        return values_.empty() ? 0.0 : static_cast<double>(clipped_) / static_cast<double>(values_.size());
    }

    /// Concatenate several sequences; the pooled result is renormalized.
    static UnfoldedSpacings pool(std::span<const UnfoldedSpacings> parts);

private:
    UnfoldedSpacings(std::vector<double> values, std::size_t clipped)
        : values_(std::move(values)), clipped_(clipped) {}

    std::vector<double> values_;
    std::size_t clipped_ = 0;
};

/// Uniform-bin density histogram on [0, n_bins * bin_width).
struct HistogramDensity {
    double bin_width = 0.0;
    std::vector<double> bin_edges;  // n_bins + 1 entries
    std::vector<double> density;    // n_bins entries
    std::size_t samples = 0;

    [[nodiscard]] std::size_t bins() const noexcept { return density.size(); }
    [[nodiscard]] double midpoint(std::size_t i) const noexcept { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

/// Largest entry of |H - H^dagger| tolerated by eigenvalues(), relative to max(1, max|H_ij|).
inline constexpr double kHermiticityTol = 1e-12;

/// All eigenvalues in ascending order. Throws std::invalid_argument for
/// non-square or non-Hermitian input.
[[nodiscard]] RealSpectrum eigenvalues(const Eigen::MatrixXd& h);
[[nodiscard]] RealSpectrum eigenvalues(const Eigen::MatrixXcd& h);
[[nodiscard]] RealSpectrum eigenvalues(const HermitianMatrix& h);

/// Mean level spacing over the central 80% of a spectrum.
[[nodiscard]] double central_mean_spacing(const RealSpectrum& spectrum);

struct UnfoldOptions {
    int degree = 7;
    double trim_fraction = 0.05;
};

/// Polynomial unfolding: fit a degree-d polynomial to the staircase (E_i, i) over
/// the trimmed interior and take differences of the fitted staircase between
/// consecutive interior levels. Negative differences are clipped to zero and counted.
[[nodiscard]] UnfoldedSpacings unfold(const RealSpectrum& spectrum, UnfoldOptions opts = {});

/// Consecutive differences, renormalized to unit mean.
[[nodiscard]] UnfoldedSpacings nn_spacings(std::span<const double> sequence);
[[nodiscard]] inline UnfoldedSpacings nn_spacings(const RealSpectrum& spectrum) {
    return nn_spacings(spectrum.levels());
}

/// Density histogram covering [0, max(s) + bin_width). Throws on empty input or bin_width <= 0.
[[nodiscard]] HistogramDensity histogram(std::span<const double> spacings, double bin_width);
[[nodiscard]] inline HistogramDensity histogram(const UnfoldedSpacings& spacings, double bin_width) {
    return histogram(spacings.values(), bin_width);
}

}  // namespace qspacing
