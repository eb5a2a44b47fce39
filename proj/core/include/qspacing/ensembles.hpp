#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "qspacing/spectral.hpp"
#include "qspacing/types.hpp"

namespace qspacing {

/// Gaussian ensemble draw parameters.
///
/// Orthogonal class: Var(H_ij) = sigma2 off the diagonal, 2 sigma2 on it.
/// Unitary class: off-diagonal real and imaginary parts each have variance
/// sigma2 / 2 (so E|H_ij|^2 = sigma2) and the real diagonal has variance sigma2.
struct GaussianEnsembleConfig {
    SymmetryClass cls{1};
    std::size_t dim = 200;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;
};

/// Two-dimensional oscillator levels hbar_omega (n + alpha m), n, m >= 0.
struct OscillatorConfig {
    double alpha = 0.70710678118654752;
    std::size_t count = 200;
    double hbar_omega = 1.0;
};

enum class MixNormalization { Raw, UnitMeanSpacing };

[[nodiscard]] std::string_view to_string(MixNormalization n) noexcept;
[[nodiscard]] MixNormalization parse_normalization(std::string_view text);

/// H(g) = (1 - g) H_osc + g H_random, drawn `members` times.
struct MixConfig {
    double g = 0.0;
    OscillatorConfig base;
    GaussianEnsembleConfig perturbation;
    std::size_t members = 20;
    MixNormalization normalization = MixNormalization::Raw;
};

/// Parameters of the 2x2 rejection sampler. `scale` is the product (1 - q) eta_q.
struct OracleConfig {
    SymmetryClass cls{1};
    EntropicIndex q{0.0};
    double scale = 1.0;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
};

void validate(const GaussianEnsembleConfig& cfg);
void validate(const OscillatorConfig& cfg);
void validate(const MixConfig& cfg);

/// Real symmetric draw. Throws unless cfg.cls is the orthogonal class.
[[nodiscard]] Eigen::MatrixXd sample_goe(const GaussianEnsembleConfig& cfg);
/// Complex Hermitian draw. Throws unless cfg.cls is the unitary class.
[[nodiscard]] Eigen::MatrixXcd sample_gue(const GaussianEnsembleConfig& cfg);
/// Dispatches on cfg.cls (1 or 2).
[[nodiscard]] HermitianMatrix sample_gaussian(const GaussianEnsembleConfig& cfg);

/// The `count` lowest oscillator levels, ascending, degeneracies kept.
[[nodiscard]] RealSpectrum ho_spectrum(const OscillatorConfig& cfg);

/// Seed of the perturbation drawn for one ensemble member.
[[nodiscard]] std::uint64_t member_seed(const MixConfig& cfg, std::size_t member_index) noexcept;

/// One member of the mixed ensemble. Under UnitMeanSpacing both the oscillator
/// diagonal and the random matrix are rescaled to unit central mean spacing first.
[[nodiscard]] HermitianMatrix mixed_hamiltonian(const MixConfig& cfg, std::size_t member_index);

/// Exact rejection sampler for the 2x2 joint density in (s, X) with
/// weight s^beta [1 - scale (s^2/2 + 2 X^2)]_+^(1/(1-q)). Returns the s marginal
/// rescaled to unit mean. Throws for q >= 1.
[[nodiscard]] UnfoldedSpacings sample_tsallis_2x2(const OracleConfig& cfg);

/// Raw accepted (s, X) pairs before rescaling; exposed for support checks.
struct OraclePair {
    double s;
    double centre;
};
[[nodiscard]] std::vector<OraclePair> sample_tsallis_2x2_pairs(const OracleConfig& cfg);

}  // namespace qspacing
