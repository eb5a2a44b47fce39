#include "qspacing/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qspacing {
namespace {

template <typename Matrix>
void require_hermitian(const Matrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw std::invalid_argument("eigenvalues: matrix must be square and nonempty");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermiticityTol * scale)) {
        throw std::invalid_argument("eigenvalues: matrix is not Hermitian (max |H - H^dagger| = " +
                                    std::to_string(asym) + ")");
    }
}

template <typename Matrix>
RealSpectrum solve(const Matrix& h) {
    require_hermitian(h);
    if (h.rows() == 1) {
        // RealSpectrum needs two levels; a 1x1 matrix has a single trivial eigenvalue.
        throw std::invalid_argument("eigenvalues: need at least a 2x2 matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigenvalues: Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    std::vector<double> levels(ev.data(), ev.data() + ev.size());
    std::sort(levels.begin(), levels.end());
    return RealSpectrum(std::move(levels));
}

// Chebyshev basis T_0..T_degree at x.
void chebyshev_row(double x, int degree, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row) {
    row(0) = 1.0;
    if (degree >= 1) row(1) = x;
    for (int j = 2; j <= degree; ++j) row(j) = 2.0 * x * row(j - 1) - row(j - 2);
}

}  // namespace

RealSpectrum::RealSpectrum(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) {
        throw std::invalid_argument("a spectrum needs at least two levels");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!std::isfinite(levels_[i])) throw std::invalid_argument("spectrum contains a non-finite level");
        if (i > 0 && levels_[i] < levels_[i - 1]) {
            throw std::invalid_argument("spectrum levels must be nondecreasing");
        }
    }
}

UnfoldedSpacings UnfoldedSpacings::normalize(std::vector<double> raw, std::size_t clipped) {
    if (raw.empty()) throw std::invalid_argument("spacing sequence is empty");
    double sum = 0.0;
    for (double s : raw) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("spacings must be finite and nonnegative");
        }
        sum += s;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("spacing sequence has zero mean");
    const double mean = sum / static_cast<double>(raw.size());
    for (double& s : raw) s /= mean;
    return UnfoldedSpacings(std::move(raw), clipped);
}

UnfoldedSpacings UnfoldedSpacings::pool(std::span<const UnfoldedSpacings> parts) {
    std::vector<double> all;
    std::size_t clipped = 0;
    for (const auto& p : parts) {
        all.insert(all.end(), p.values_.begin(), p.values_.end());
        clipped += p.clipped_;
    }
    return normalize(std::move(all), clipped);
}

RealSpectrum eigenvalues(const Eigen::MatrixXd& h) { return solve(h); }
RealSpectrum eigenvalues(const Eigen::MatrixXcd& h) { return solve(h); }
RealSpectrum eigenvalues(const HermitianMatrix& h) {
    return std::visit([](const auto& m) { return eigenvalues(m); }, h);
}

double central_mean_spacing(const RealSpectrum& spectrum) {
    const std::size_t n = spectrum.size();
    const auto lo = static_cast<std::size_t>(std::floor(0.1 * static_cast<double>(n)));
    auto hi = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(n)));
    hi = std::clamp<std::size_t>(hi, lo + 1, n) - 1;
    const double d = (spectrum[hi] - spectrum[lo]) / static_cast<double>(hi - lo);
    if (!(d > 0.0)) throw std::invalid_argument("central mean spacing is zero (degenerate spectrum)");
    return d;
}

UnfoldedSpacings unfold(const RealSpectrum& spectrum, UnfoldOptions opts) {
    if (opts.degree < 1) throw std::invalid_argument("unfold: polynomial degree must be >= 1");
    if (!(opts.trim_fraction >= 0.0 && opts.trim_fraction < 0.5)) {
        throw std::invalid_argument("unfold: trim fraction must lie in [0, 0.5)");
    }
    const std::size_t n = spectrum.size();
    const auto trim = static_cast<std::size_t>(std::floor(opts.trim_fraction * static_cast<double>(n)));
    const std::size_t first = trim;
    const std::size_t last = n - 1 - trim;
    const std::size_t m = last >= first ? last - first + 1 : 0;
    if (m <= static_cast<std::size_t>(opts.degree) + 1) {
        throw std::invalid_argument("unfold: too few levels left after trimming for the requested degree");
    }
    const double e_lo = spectrum[first];
    const double e_hi = spectrum[last];
    if (!(e_hi > e_lo)) throw std::invalid_argument("unfold: degenerate spectrum");

    const double centre = 0.5 * (e_lo + e_hi);
    const double half = 0.5 * (e_hi - e_lo);
    const int cols = opts.degree + 1;

    Eigen::MatrixXd basis(static_cast<Eigen::Index>(m), cols);
    Eigen::VectorXd counts(static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = first + r;
        chebyshev_row((spectrum[i] - centre) / half, opts.degree, basis.row(static_cast<Eigen::Index>(r)));
        counts(static_cast<Eigen::Index>(r)) = static_cast<double>(i);
    }
    const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(counts);
    const Eigen::VectorXd smooth = basis * coef;

    std::vector<double> raw(m - 1);
    std::size_t clipped = 0;
    for (std::size_t r = 0; r + 1 < m; ++r) {
        double s = smooth(static_cast<Eigen::Index>(r + 1)) - smooth(static_cast<Eigen::Index>(r));
        if (s < 0.0) {
            s = 0.0;
            ++clipped;
        }
        raw[r] = s;
    }
    return UnfoldedSpacings::normalize(std::move(raw), clipped);
}

UnfoldedSpacings nn_spacings(std::span<const double> sequence) {
    if (sequence.size() < 2) throw std::invalid_argument("nn_spacings: need at least two values");
    std::vector<double> raw(sequence.size() - 1);
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) raw[i] = sequence[i + 1] - sequence[i];
    return UnfoldedSpacings::normalize(std::move(raw));
}

HistogramDensity histogram(std::span<const double> spacings, double bin_width) {
    if (spacings.empty()) throw std::invalid_argument("histogram: no data");
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw std::invalid_argument("histogram: bin width must be positive");
    }
    const double top = *std::max_element(spacings.begin(), spacings.end());
    if (!(top >= 0.0) || !std::isfinite(top)) throw std::invalid_argument("histogram: invalid data");
    const auto bins = static_cast<std::size_t>(std::floor(top / bin_width)) + 1;

    HistogramDensity h;
    h.bin_width = bin_width;
    h.samples = spacings.size();
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.bin_edges[i] = static_cast<double>(i) * bin_width;

    std::vector<std::size_t> counts(bins, 0);
    for (double s : spacings) {
        if (s < 0.0) throw std::invalid_argument("histogram: negative spacing");
        const auto idx = std::min(static_cast<std::size_t>(std::floor(s / bin_width)), bins - 1);
        ++counts[idx];
    }
    const double norm = 1.0 / (static_cast<double>(spacings.size()) * bin_width);
    h.density.resize(bins);
    std::transform(counts.begin(), counts.end(), h.density.begin(),
                   [norm](std::size_t c) { return static_cast<double>(c) * norm; });
    return h;
}

}  // namespace qspacing
