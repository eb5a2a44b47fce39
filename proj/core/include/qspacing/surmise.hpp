#pragma once

#include <limits>

#include "qspacing/types.hpp"

namespace qspacing {

/// Normalization and scale of a nearest-neighbour spacing law
///   P(s) = a s^beta [1 - b s^2]^(1/(1-q) + 1/2),   0 <= s <= 1/sqrt(b)
/// and of the Wigner surmise a s^beta exp(-b s^2) when q == 1.
struct SpacingCoefficients {
    double a;
    double b;
    double s_max;
};

/// Wigner surmise constants (a_beta, b_beta) for the 2x2 Gaussian ensembles.
[[nodiscard]] SpacingCoefficients wigner_coeffs(SymmetryClass cls) noexcept;

[[nodiscard]] double wigner_pdf(SymmetryClass cls, double s) noexcept;

/// Gamma-function coefficients of the super-extensive law for any beta.
/// Evaluated through log-Gamma differences so that q close to 1 stays finite.
/// Throws std::invalid_argument for q >= 1.
[[nodiscard]] SpacingCoefficients tsallis_coeffs(SymmetryClass cls, EntropicIndex q);

/// The beta = 1 and beta = 2 closed forms, kept separately so the general
/// expression can be checked against them. Throws for beta = 4 or q >= 1.
[[nodiscard]] SpacingCoefficients tsallis_coeffs_specialized(SymmetryClass cls, EntropicIndex q);

/// An analytic spacing distribution with unit mean.
///
/// Immutable after construction. q == 1 routes to the Wigner surmise and has
/// unbounded support; q < 1 has compact support [0, s_max].
class SpacingLaw {
public:
    SpacingLaw(SymmetryClass cls, EntropicIndex q);

    [[nodiscard]] SymmetryClass symmetry() const noexcept { return cls_; }
    [[nodiscard]] EntropicIndex index() const noexcept { return q_; }
    [[nodiscard]] double a() const noexcept { return coeffs_.a; }
    [[nodiscard]] double b() const noexcept { return coeffs_.b; }
    [[nodiscard]] double s_max() const noexcept { return coeffs_.s_max; }
    /// Power of the bracket, 1/(1-q) + 1/2; infinity in the Wigner limit.
    [[nodiscard]] double exponent() const noexcept { return exponent_; }

    [[nodiscard]] double pdf(double s) const noexcept;
    [[nodiscard]] double log_pdf(double s) const noexcept;
    [[nodiscard]] double cdf(double s) const;
    /// Inverse CDF; throws std::invalid_argument for p outside [0, 1].
    [[nodiscard]] double quantile(double p) const;

private:
    SymmetryClass cls_;
    EntropicIndex q_;
    SpacingCoefficients coeffs_;
    double exponent_;
};

[[nodiscard]] inline double tsallis_pdf(const SpacingLaw& law, double s) noexcept { return law.pdf(s); }
[[nodiscard]] inline double tsallis_cdf(const SpacingLaw& law, double s) { return law.cdf(s); }
[[nodiscard]] inline double quantile(const SpacingLaw& law, double p) { return law.quantile(p); }

}  // namespace qspacing
