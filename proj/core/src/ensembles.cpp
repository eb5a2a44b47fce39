#include "qspacing/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include "qspacing/rng.hpp"

namespace qspacing {
namespace {

// Stream ids; member streams use the member index directly.
constexpr std::uint64_t kMatrixStream = 0x6d61747269780000ULL;
constexpr std::uint64_t kOracleStream = 0x6f7261636c650000ULL;

Eigen::MatrixXd mix_real(double g, const Eigen::VectorXd& diag, double diag_scale, const Eigen::MatrixXd& p,
                         double p_scale) {
    Eigen::MatrixXd h = (g * p_scale) * p;
    h.diagonal() += ((1.0 - g) * diag_scale) * diag;
    return h;
}

Eigen::MatrixXcd mix_complex(double g, const Eigen::VectorXd& diag, double diag_scale, const Eigen::MatrixXcd& p,
                             double p_scale) {
    Eigen::MatrixXcd h = (g * p_scale) * p;
    h.diagonal() += (((1.0 - g) * diag_scale) * diag).cast<std::complex<double>>();
    return h;
}

}  // namespace

std::string_view to_string(MixNormalization n) noexcept {
    return n == MixNormalization::Raw ? "raw" : "unit-mean";
}

MixNormalization parse_normalization(std::string_view text) {
    if (text == "raw") return MixNormalization::Raw;
    if (text == "unit-mean") return MixNormalization::UnitMeanSpacing;
    throw std::invalid_argument("normalization must be 'raw' or 'unit-mean', got '" + std::string(text) + "'");
}

void validate(const GaussianEnsembleConfig& cfg) {
    if (cfg.cls.beta() != 1 && cfg.cls.beta() != 2) {
        throw std::invalid_argument("Gaussian sampling supports the orthogonal and unitary classes only");
    }
    if (cfg.dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (!(cfg.sigma2 > 0.0) || !std::isfinite(cfg.sigma2)) throw std::invalid_argument("sigma2 must be positive");
}

void validate(const OscillatorConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("frequency ratio must lie in (0, 1)");
    if (cfg.count < 2) throw std::invalid_argument("oscillator level count must be >= 2");
    if (!(cfg.hbar_omega > 0.0)) throw std::invalid_argument("hbar_omega must be positive");
}

void validate(const MixConfig& cfg) {
    if (!(cfg.g >= 0.0 && cfg.g <= 1.0)) throw std::invalid_argument("mixing parameter g must lie in [0, 1]");
    validate(cfg.base);
    validate(cfg.perturbation);
    if (cfg.base.count != cfg.perturbation.dim) {
        throw std::invalid_argument("oscillator level count must equal the random-matrix dimension");
    }
    if (cfg.members < 1) throw std::invalid_argument("ensemble needs at least one member");
}

Eigen::MatrixXd sample_goe(const GaussianEnsembleConfig& cfg) {
    validate(cfg);
    if (cfg.cls.beta() != 1) throw std::invalid_argument("sample_goe needs the orthogonal class");
    auto rng = make_engine(cfg.seed, kMatrixStream);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(cfg.dim);
    const double off = std::sqrt(cfg.sigma2);
    const double on = std::sqrt(2.0 * cfg.sigma2);

    Eigen::MatrixXd h(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        h(j, j) = on * normal(rng);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            h(i, j) = off * normal(rng);
            h(j, i) = h(i, j);
        }
    }
    return h;
}

Eigen::MatrixXcd sample_gue(const GaussianEnsembleConfig& cfg) {
    validate(cfg);
    if (cfg.cls.beta() != 2) throw std::invalid_argument("sample_gue needs the unitary class");
    auto rng = make_engine(cfg.seed, kMatrixStream);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(cfg.dim);
    const double part = std::sqrt(cfg.sigma2 / 2.0);
    const double on = std::sqrt(cfg.sigma2);

    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        h(j, j) = {on * normal(rng), 0.0};
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double re = part * normal(rng);
            const double im = part * normal(rng);
            h(i, j) = {re, im};
            h(j, i) = {re, -im};
        }
    }
    return h;
}

HermitianMatrix sample_gaussian(const GaussianEnsembleConfig& cfg) {
    if (cfg.cls.beta() == 2) return sample_gue(cfg);
    return sample_goe(cfg);
}

RealSpectrum ho_spectrum(const OscillatorConfig& cfg) {
    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw std::invalid_argument("frequency ratio must be positive");
    if (cfg.count < 2) throw std::invalid_argument("oscillator level count must be >= 2");

    // Collect every level below a cutoff, growing the cutoff until enough are found.
    std::vector<double> levels;
    double cutoff = 1.0;
    for (;;) {
        levels.clear();
        const auto m_max = static_cast<std::size_t>(std::floor(cutoff / cfg.alpha));
        for (std::size_t m = 0; m <= m_max; ++m) {
            const double shift = cfg.alpha * static_cast<double>(m);
            for (std::size_t n = 0; static_cast<double>(n) + shift <= cutoff; ++n) {
                levels.push_back(static_cast<double>(n) + shift);
            }
        }
        if (levels.size() >= cfg.count) break;
        cutoff *= 1.5;
    }
    std::sort(levels.begin(), levels.end());
    levels.resize(cfg.count);
    for (double& e : levels) e *= cfg.hbar_omega;
    return RealSpectrum(std::move(levels));
}

std::uint64_t member_seed(const MixConfig& cfg, std::size_t member_index) noexcept {
    return derive_seed(cfg.perturbation.seed, member_index);
}

HermitianMatrix mixed_hamiltonian(const MixConfig& cfg, std::size_t member_index) {
    validate(cfg);
    if (member_index >= cfg.members) throw std::out_of_range("member index exceeds ensemble size");

    const RealSpectrum levels = ho_spectrum(cfg.base);
    const Eigen::VectorXd diag =
        Eigen::Map<const Eigen::VectorXd>(levels.levels().data(), static_cast<Eigen::Index>(levels.size()));
    const bool unit = cfg.normalization == MixNormalization::UnitMeanSpacing;
    const double diag_scale = unit ? 1.0 / central_mean_spacing(levels) : 1.0;

    GaussianEnsembleConfig pert = cfg.perturbation;
    pert.seed = member_seed(cfg, member_index);
    const auto n = static_cast<Eigen::Index>(pert.dim);

    if (pert.cls.beta() == 1) {
        Eigen::MatrixXd p = cfg.g > 0.0 ? sample_goe(pert) : Eigen::MatrixXd::Zero(n, n);
        const double p_scale = unit && cfg.g > 0.0 ? 1.0 / central_mean_spacing(eigenvalues(p)) : 1.0;
        return mix_real(cfg.g, diag, diag_scale, p, p_scale);
    }
    Eigen::MatrixXcd p = cfg.g > 0.0 ? sample_gue(pert) : Eigen::MatrixXcd::Zero(n, n);
    const double p_scale = unit && cfg.g > 0.0 ? 1.0 / central_mean_spacing(eigenvalues(p)) : 1.0;
    return mix_complex(cfg.g, diag, diag_scale, p, p_scale);
}

std::vector<OraclePair> sample_tsallis_2x2_pairs(const OracleConfig& cfg) {
    if (cfg.q.value() >= 1.0) throw std::invalid_argument("the 2x2 oracle needs q < 1");
    if (cfg.cls.beta() != 1 && cfg.cls.beta() != 2) {
        throw std::invalid_argument("the 2x2 oracle supports the orthogonal and unitary classes only");
    }
    if (!(cfg.scale > 0.0) || !std::isfinite(cfg.scale)) throw std::invalid_argument("oracle scale must be positive");
    if (cfg.samples < 1) throw std::invalid_argument("oracle needs at least one sample");

    const double power = 1.0 / (1.0 - cfg.q.value());
    const double beta = cfg.cls.beta();
    // Bounding box of the ellipse s^2/2 + 2X^2 <= 1/scale, s >= 0.
    const double s_edge = std::sqrt(2.0 / cfg.scale);
    const double x_edge = std::sqrt(0.5 / cfg.scale);

    auto rng = make_engine(cfg.seed, kOracleStream);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<OraclePair> out;
    out.reserve(cfg.samples);
    while (out.size() < cfg.samples) {
        // s has proposal density proportional to s^beta on [0, s_edge]; X is uniform.
        const double s = s_edge * std::pow(unit(rng), 1.0 / (beta + 1.0));
        const double x = x_edge * (2.0 * unit(rng) - 1.0);
        const double bracket = 1.0 - cfg.scale * (0.5 * s * s + 2.0 * x * x);
        const double u = unit(rng);
        if (bracket > 0.0 && u < std::pow(bracket, power)) out.push_back({s, x});
    }
    return out;
}

UnfoldedSpacings sample_tsallis_2x2(const OracleConfig& cfg) {
    const auto pairs = sample_tsallis_2x2_pairs(cfg);
    std::vector<double> s(pairs.size());
    std::transform(pairs.begin(), pairs.end(), s.begin(), [](const OraclePair& p) { return p.s; });
    return UnfoldedSpacings::normalize(std::move(s));
}

}  // namespace qspacing
