#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qspacing/ensembles.hpp"
#include "qspacing/fitting.hpp"
#include "support/oracles.hpp"

using namespace qspacing;

namespace {

GaussianEnsembleConfig goe(std::size_t n, std::uint64_t seed, double sigma2 = 1.0) {
    GaussianEnsembleConfig c;
    c.cls = SymmetryClass(1);
    c.dim = n;
    c.seed = seed;
    c.sigma2 = sigma2;
    return c;
}

GaussianEnsembleConfig gue(std::size_t n, std::uint64_t seed, double sigma2 = 1.0) {
    auto c = goe(n, seed, sigma2);
    c.cls = SymmetryClass(2);
    return c;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST(SampleGoe, SymmetricDeterministicAndClassChecked) {
    const auto a = sample_goe(goe(30, 1));
    EXPECT_EQ(a, a.transpose());
    EXPECT_EQ(a, sample_goe(goe(30, 1)));
    EXPECT_NE(a, sample_goe(goe(30, 2)));
    EXPECT_THROW((void)sample_goe(gue(3, 1)), std::invalid_argument);
    EXPECT_THROW((void)sample_goe(goe(0, 1)), std::invalid_argument);
    EXPECT_THROW((void)sample_goe(goe(3, 1, 0.0)), std::invalid_argument);
}

TEST(SampleGoe, SingleEntryHasDiagonalVariance) {
    double sum = 0.0, sq = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        const double x = sample_goe(goe(1, static_cast<std::uint64_t>(i), 1.5))(0, 0);
        sum += x;
        sq += x * x;
    }
    const double var = sq / draws - (sum / draws) * (sum / draws);
    EXPECT_NEAR(var, 3.0, 0.1);
}

TEST(SampleGoe, ZeroMeanAndVarianceConvention) {
    const int draws = 10000;
    double mean = 0.0, off_sq = 0.0, diag_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto h = sample_goe(goe(4, 10000 + static_cast<std::uint64_t>(i)));
        mean += h.mean();
        off_sq += h(0, 1) * h(0, 1);
        diag_sq += h(2, 2) * h(2, 2);
    }
    mean /= draws;
    // Entry mean over 16 entries of variance ~1.25 on average.
    EXPECT_LT(std::abs(mean), 4.0 * std::sqrt(1.25 / 16.0 / draws) * 1.5);
    EXPECT_NEAR(off_sq / draws, 1.0, 0.06);
    EXPECT_NEAR(diag_sq / draws, 2.0, 0.12);
}

TEST(SampleGoe, SemicircleDensity) {
    const std::size_t n = 200;
    std::vector<double> all;
    for (std::uint64_t m = 0; m < 20; ++m) {
        const auto ev = eigenvalues(sample_goe(goe(n, 300 + m)));
        all.insert(all.end(), ev.levels().begin(), ev.levels().end());
    }
    std::sort(all.begin(), all.end());
    // Off-diagonal variance sigma2 gives radius 2 sqrt(N sigma2).
    const double r = 2.0 * std::sqrt(static_cast<double>(n));
    double d = 0.0;
    const double total = static_cast<double>(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        const double f = oracle::semicircle_cdf(all[i], r);
        d = std::max({d, f - i / total, (i + 1) / total - f});
    }
    EXPECT_LT(d, 0.03);
}

TEST(SampleGue, HermitianDeterministicAndClassChecked) {
    const auto h = sample_gue(gue(25, 4));
    EXPECT_EQ(h, h.adjoint());
    EXPECT_EQ(h, sample_gue(gue(25, 4)));
    EXPECT_THROW((void)sample_gue(goe(3, 1)), std::invalid_argument);
    const auto one = sample_gue(gue(1, 9));
    EXPECT_EQ(one(0, 0).imag(), 0.0);
}

TEST(SampleGue, VarianceConvention) {
    const int draws = 10000;
    double re = 0.0, im = 0.0, diag = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto h = sample_gue(gue(3, 50000 + static_cast<std::uint64_t>(i), 2.0));
        re += h(0, 1).real() * h(0, 1).real();
        im += h(0, 1).imag() * h(0, 1).imag();
        diag += h(1, 1).real() * h(1, 1).real();
    }
    EXPECT_NEAR(re / draws, 1.0, 0.06);
    EXPECT_NEAR(im / draws, 1.0, 0.06);
    EXPECT_NEAR(diag / draws, 2.0, 0.12);
}

TEST(HoSpectrum, FirstLevelsForInverseRootTwo) {
    OscillatorConfig cfg;
    cfg.alpha = 1.0 / std::sqrt(2.0);
    cfg.count = 8;
    // Enumerate n + alpha m over a generous box and sort.
    std::vector<double> ref;
    for (int n = 0; n < 10; ++n)
        for (int m = 0; m < 10; ++m) ref.push_back(n + cfg.alpha * m);
    std::sort(ref.begin(), ref.end());
    const auto ev = ho_spectrum(cfg);
    const double expected[] = {0, 0.70711, 1, 1.41421, 1.70711, 2, 2.12132, 2.41421};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_DOUBLE_EQ(ev[i], ref[i]);
        EXPECT_NEAR(ev[i], expected[i], 1e-5);
    }
}

TEST(HoSpectrum, CommensurateDegeneracy) {
    OscillatorConfig cfg;
    cfg.alpha = 1.0;
    cfg.count = 15;
    const auto ev = ho_spectrum(cfg);
    std::size_t i = 0;
    for (int level = 0; i < 15; ++level) {
        for (int k = 0; k <= level && i < 15; ++k, ++i) EXPECT_EQ(ev[i], level);
    }
}

TEST(HoSpectrum, LargeCountsKeepLowLevels) {
    for (double alpha : {1 / std::sqrt(2.0), 1 / std::sqrt(5.0), std::exp(-1.0)}) {
        OscillatorConfig cfg;
        cfg.alpha = alpha;
        cfg.count = 10000;
        cfg.hbar_omega = 2.0;
        const auto ev = ho_spectrum(cfg);
        EXPECT_EQ(ev.size(), 10000u);
        EXPECT_EQ(ev[0], 0.0);
        EXPECT_DOUBLE_EQ(ev[1], 2.0 * alpha);
        // Every lattice point below the top level is present: count them directly.
        const double top = ev[9999] / 2.0;
        std::size_t below = 0;
        for (int m = 0; alpha * m < top; ++m) below += static_cast<std::size_t>(std::ceil(top - alpha * m));
        EXPECT_LE(below, 10000u);
        EXPECT_GE(below + 5, 10000u);
    }
}

TEST(MixedHamiltonian, Endpoints) {
    MixConfig cfg;
    cfg.base.count = 40;
    cfg.perturbation = goe(40, 77);
    cfg.members = 3;
    cfg.normalization = MixNormalization::Raw;

    cfg.g = 0.0;
    const auto d = std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, 1));
    const auto levels = ho_spectrum(cfg.base);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(40, 40);
    for (Eigen::Index i = 0; i < 40; ++i) expect(i, i) = levels[static_cast<std::size_t>(i)];
    EXPECT_EQ(d, expect);

    cfg.g = 1.0;
    auto p = cfg.perturbation;
    p.seed = member_seed(cfg, 1);
    EXPECT_EQ(std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, 1)), sample_goe(p));

    cfg.perturbation = gue(40, 77);
    p = cfg.perturbation;
    p.seed = member_seed(cfg, 2);
    EXPECT_EQ(std::get<Eigen::MatrixXcd>(mixed_hamiltonian(cfg, 2)), sample_gue(p));
}

TEST(MixedHamiltonian, UnitMeanSpacingRescalesBothTerms) {
    MixConfig cfg;
    cfg.base.count = 60;
    cfg.perturbation = goe(60, 5);
    cfg.members = 2;
    cfg.normalization = MixNormalization::UnitMeanSpacing;
    cfg.g = 0.0;
    EXPECT_NEAR(central_mean_spacing(eigenvalues(mixed_hamiltonian(cfg, 0))), 1.0, 1e-12);
    cfg.g = 1.0;
    EXPECT_NEAR(central_mean_spacing(eigenvalues(mixed_hamiltonian(cfg, 0))), 1.0, 1e-10);
}

TEST(MixedHamiltonian, ErrorsAndSymmetry) {
    MixConfig cfg;
    cfg.base.count = 10;
    cfg.perturbation = goe(12, 5);
    EXPECT_THROW((void)mixed_hamiltonian(cfg, 0), std::invalid_argument);
    cfg.perturbation.dim = 10;
    cfg.members = 2;
    EXPECT_THROW((void)mixed_hamiltonian(cfg, 2), std::out_of_range);
    cfg.g = 1.5;
    EXPECT_THROW((void)mixed_hamiltonian(cfg, 0), std::invalid_argument);
    cfg.g = 0.3;
    const auto h = std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, 1));
    EXPECT_EQ(h, h.transpose());
    cfg.perturbation.cls = SymmetryClass(2);
    const auto c = std::get<Eigen::MatrixXcd>(mixed_hamiltonian(cfg, 1));
    EXPECT_EQ(c, c.adjoint());
}

TEST(MixedHamiltonian, MembersUseIndependentStreams) {
    MixConfig cfg;
    cfg.base.count = 2;
    cfg.perturbation = goe(2, 2024);
    cfg.members = 4000;
    cfg.g = 1.0;
    // Neighbouring members must not share stream state: their (0,1) entries are uncorrelated.
    std::vector<double> x, y;
    for (std::size_t m = 0; m + 1 < cfg.members; m += 2) {
        x.push_back(std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, m))(0, 1));
        y.push_back(std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, m + 1))(0, 1));
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 4.0 / std::sqrt(n));

    std::set<std::uint64_t> seeds;
    for (std::size_t m = 0; m < 1000; ++m) seeds.insert(member_seed(cfg, m));
    EXPECT_EQ(seeds.size(), 1000u);
    // A member's draw depends on its index alone, not on what was generated before.
    const auto late = std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, 7));
    (void)mixed_hamiltonian(cfg, 3);
    EXPECT_EQ(late, std::get<Eigen::MatrixXd>(mixed_hamiltonian(cfg, 7)));
}

TEST(Oracle, AcceptedPairsLieInsideEllipse) {
    OracleConfig cfg;
    cfg.cls = SymmetryClass(2);
    cfg.q = EntropicIndex(0.3);
    cfg.scale = 0.7;
    cfg.samples = 20000;
    for (const auto& p : sample_tsallis_2x2_pairs(cfg)) {
        EXPECT_LE(cfg.scale * (0.5 * p.s * p.s + 2.0 * p.centre * p.centre), 1.0);
        EXPECT_GE(p.s, 0.0);
    }
}

TEST(Oracle, UnitMeanAndDeterminism) {
    OracleConfig cfg;
    cfg.q = EntropicIndex(0.5);
    cfg.samples = 5000;
    cfg.seed = 3;
    const auto a = sample_tsallis_2x2(cfg);
    const double mean = std::accumulate(a.values().begin(), a.values().end(), 0.0) / static_cast<double>(a.size());
    EXPECT_NEAR(mean, 1.0, 1e-13);
    const auto b = sample_tsallis_2x2(cfg);
    EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(Oracle, RejectsWignerIndex) {
    OracleConfig cfg;
    cfg.q = EntropicIndex(1.0);
    EXPECT_THROW((void)sample_tsallis_2x2(cfg), std::invalid_argument);
    cfg.q = EntropicIndex(0.5);
    cfg.samples = 0;
    EXPECT_THROW((void)sample_tsallis_2x2(cfg), std::invalid_argument);
}

TEST(Oracle, MarginalMatchesAnalyticLaw) {
    OracleConfig cfg;
    cfg.cls = SymmetryClass(1);
    cfg.q = EntropicIndex(0.5);
    cfg.samples = 1000000;
    cfg.seed = 1;
    const auto s = sample_tsallis_2x2(cfg);
    EXPECT_LT(ks_distance(s, SpacingLaw{cfg.cls, cfg.q}), 0.005);
}

TEST(Oracle, SupportBound) {
    for (int beta : {1, 2}) {
        OracleConfig cfg;
        cfg.cls = SymmetryClass(beta);
        cfg.q = EntropicIndex(0.2);
        cfg.samples = 100000;
        const auto s = sample_tsallis_2x2(cfg);
        const double top = *std::max_element(s.values().begin(), s.values().end());
        const SpacingLaw law{cfg.cls, cfg.q};
        // Rescaling by the sample mean can push the largest draw past s_max by
        // at most the mean's relative sampling error.
        EXPECT_LT(top, law.s_max() * 1.003);
        EXPECT_GT(top, law.quantile(0.999));
    }
}

TEST(Oracle, ScaleInvariance) {
    OracleConfig cfg;
    cfg.cls = SymmetryClass(1);
    cfg.q = EntropicIndex(0.4);
    cfg.samples = 100000;
    cfg.seed = 10;
    const auto a = sample_tsallis_2x2(cfg);
    cfg.scale = 2.0;
    cfg.seed = 11;
    const auto b = sample_tsallis_2x2(cfg);
    EXPECT_LT(ks_two_sample({a.values().begin(), a.values().end()}, {b.values().begin(), b.values().end()}), 0.01);
}

TEST(Normalization, ParseRoundTrip) {
    EXPECT_EQ(parse_normalization("raw"), MixNormalization::Raw);
    EXPECT_EQ(parse_normalization("unit-mean"), MixNormalization::UnitMeanSpacing);
    EXPECT_EQ(to_string(MixNormalization::Raw), "raw");
    EXPECT_THROW((void)parse_normalization("other"), std::invalid_argument);
}
