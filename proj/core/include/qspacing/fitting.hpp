#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "qspacing/spectral.hpp"
#include "qspacing/surmise.hpp"
#include "qspacing/types.hpp"

namespace qspacing {

enum class FitMethod { HistLS, MLE };

[[nodiscard]] std::string_view to_string(FitMethod m) noexcept;
[[nodiscard]] FitMethod parse_fit_method(std::string_view text);

struct FitResult {
    double q_hat = 1.0;
    FitMethod method = FitMethod::HistLS;
    /// Sum of squared residuals (HistLS) or negative log-likelihood (MLE).
    double objective = 0.0;
    /// q_hat sits at an end of the searched range (0, the largest q < 1, or 1).
    bool at_boundary = false;
    /// MLE only: some q < 1 has support covering every spacing.
    bool feasible = true;
    std::size_t n_samples = 0;
};

/// Largest q < 1 examined by the estimators. q = 1 is evaluated separately.
inline constexpr double kMaxFiniteQ = 0.995;
/// Grid step of the coarse search stage and tolerance of the refinement.
inline constexpr double kGridStep = 0.01;
inline constexpr double kRefineTol = 1e-4;

/// Histogram least squares: minimize sum_bins (density - pdf(midpoint))^2.
[[nodiscard]] FitResult fit_q_ls(const HistogramDensity& hist, SymmetryClass cls);
/// The least-squares objective for a single q (exposed for diagnostics and tests).
[[nodiscard]] double ls_objective(const HistogramDensity& hist, const SpacingLaw& law);

/// Maximum likelihood over {q : b(q) max(s)^2 <= 1} together with q = 1.
/// Spacings are used as given; callers normally pass unit-mean data.
[[nodiscard]] FitResult fit_q_mle(std::span<const double> spacings, SymmetryClass cls);
[[nodiscard]] inline FitResult fit_q_mle(const UnfoldedSpacings& spacings, SymmetryClass cls) {
    return fit_q_mle(spacings.values(), cls);
}
/// Negative log-likelihood; exact zero spacings contribute a q-independent
/// divergent term that is left out.
[[nodiscard]] double negative_log_likelihood(std::span<const double> spacings, const SpacingLaw& law);

/// Kolmogorov-Smirnov distance sup |F_n - F| against the law's CDF.
[[nodiscard]] double ks_distance(std::span<const double> spacings, const SpacingLaw& law);
[[nodiscard]] inline double ks_distance(const UnfoldedSpacings& spacings, const SpacingLaw& law) {
    return ks_distance(spacings.values(), law);
}

/// CSV row `method,q_hat,objective,at_boundary,feasible,n_samples`.
[[nodiscard]] std::string to_csv_row(const FitResult& r);
inline constexpr std::string_view kFitCsvHeader = "method,q_hat,objective,at_boundary,feasible,n_samples";

}  // namespace qspacing
