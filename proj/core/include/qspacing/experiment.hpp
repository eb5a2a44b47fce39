#pragma once

#include <cstddef>

#include "qspacing/ensembles.hpp"
#include "qspacing/fitting.hpp"
#include "qspacing/spectral.hpp"

namespace qspacing {

/// Fraction of clipped unfolded spacings above which a data-quality warning is raised.
inline constexpr double kClipWarningFraction = 1e-3;

/// Eigensolve and unfold every member of a mixed ensemble, then pool the spacings.
/// Members may be processed on `threads` workers; results are merged in member
/// order, so the output does not depend on the thread count.
[[nodiscard]] UnfoldedSpacings ensemble_spacings(const MixConfig& cfg, UnfoldOptions unfold_opts,
                                                 unsigned threads = 1);

/// Unfolded spacings of the bare oscillator spectrum.
[[nodiscard]] UnfoldedSpacings oscillator_spacings(const OscillatorConfig& cfg, UnfoldOptions unfold_opts);

struct TransitionPoint {
    double g = 0.0;
    UnfoldedSpacings spacings;
    HistogramDensity hist;
    FitResult fit;
};

/// One g value of the oscillator-to-chaos sweep: pooled spacings, their histogram and the fitted q.
[[nodiscard]] TransitionPoint transition_point(const MixConfig& cfg, UnfoldOptions unfold_opts, double bin_width,
                                               FitMethod method, unsigned threads = 1);

/// Centre of the fullest histogram bin (first one on ties).
[[nodiscard]] double histogram_peak(const HistogramDensity& hist);

}  // namespace qspacing
