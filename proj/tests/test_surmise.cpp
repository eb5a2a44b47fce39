#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qspacing/surmise.hpp"
#include "support/oracles.hpp"

using namespace qspacing;
using std::numbers::pi;

namespace {

const SymmetryClass kGoe{1};
const SymmetryClass kGue{2};
const SymmetryClass kGse{4};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Grid search for the location of the maximum.
template <typename F>
double grid_argmax(F f, double lo, double hi, int steps) {
    double best_s = lo;
    double best = f(lo);
    for (int i = 1; i <= steps; ++i) {
        const double s = lo + (hi - lo) * i / steps;
        if (f(s) > best) {
            best = f(s);
            best_s = s;
        }
    }
    return best_s;
}

}  // namespace

TEST(SymmetryClass, RejectsUnknownBeta) {
    EXPECT_NO_THROW(SymmetryClass(1));
    EXPECT_NO_THROW(SymmetryClass(4));
    EXPECT_THROW(SymmetryClass(3), std::invalid_argument);
    EXPECT_THROW(SymmetryClass(0), std::invalid_argument);
}

TEST(EntropicIndex, RangeAndSentinel) {
    EXPECT_THROW(EntropicIndex(-0.01), std::invalid_argument);
    EXPECT_THROW(EntropicIndex(1.01), std::invalid_argument);
    EXPECT_THROW(EntropicIndex(std::nan("")), std::invalid_argument);
    EXPECT_TRUE(EntropicIndex(1.0).is_wigner());
    EXPECT_FALSE(EntropicIndex(0.999).is_wigner());
}

TEST(Wigner, Constants) {
    EXPECT_DOUBLE_EQ(wigner_coeffs(kGoe).a, pi / 2);
    EXPECT_DOUBLE_EQ(wigner_coeffs(kGoe).b, pi / 4);
    EXPECT_DOUBLE_EQ(wigner_coeffs(kGue).a, 32 / (pi * pi));
    EXPECT_DOUBLE_EQ(wigner_coeffs(kGue).b, 4 / pi);
    EXPECT_DOUBLE_EQ(wigner_coeffs(kGse).a, 262144.0 / (729.0 * pi * pi * pi));
    EXPECT_DOUBLE_EQ(wigner_coeffs(kGse).b, 64 / (9 * pi));
    EXPECT_TRUE(std::isinf(wigner_coeffs(kGoe).s_max));
}

TEST(Wigner, VanishesAtZeroAndPeaksWhereDerivativeVanishes) {
    EXPECT_EQ(wigner_pdf(kGoe, 0.0), 0.0);
    const double step = 1e-5;
    const double m1 = grid_argmax([](double s) { return wigner_pdf(kGoe, s); }, 0.0, 3.0, 300000);
    const double m2 = grid_argmax([](double s) { return wigner_pdf(kGue, s); }, 0.0, 3.0, 300000);
    EXPECT_NEAR(m1, std::sqrt(2 / pi), step);
    EXPECT_NEAR(m2, std::sqrt(pi) / 2, step);
    EXPECT_NEAR(m1, 0.79788, 1e-5);
    EXPECT_NEAR(m2, 0.88623, 1e-5);
}

TEST(Wigner, NormalizedWithUnitMean) {
    for (int beta : {1, 2, 4}) {
        const SpacingLaw law(SymmetryClass(beta), EntropicIndex(1.0));
        EXPECT_NEAR(oracle::moment(law, 0, 12.0), 1.0, 1e-10) << beta;
        EXPECT_NEAR(oracle::moment(law, 1, 12.0), 1.0, 1e-10) << beta;
    }
}

TEST(TsallisCoeffs, ClosedFormsAtQZero) {
    const auto c1 = tsallis_coeffs(kGoe, EntropicIndex(0.0));
    const double b1 = 25 * pi * pi / 1024;
    EXPECT_LT(rel(c1.b, b1), 1e-12);
    EXPECT_LT(rel(c1.a, 5 * b1), 1e-12);
    EXPECT_LT(rel(c1.s_max, 1 / std::sqrt(b1)), 1e-12);
    EXPECT_NEAR(c1.s_max, 2.0371832716, 1e-9);

    const auto c2 = tsallis_coeffs(kGue, EntropicIndex(0.0));
    EXPECT_LT(rel(c2.b, 4096 / (1225 * pi * pi)), 1e-12);
}

TEST(TsallisCoeffs, RejectsWignerIndex) {
    EXPECT_THROW((void)tsallis_coeffs(kGoe, EntropicIndex(1.0)), std::invalid_argument);
    EXPECT_THROW((void)tsallis_coeffs_specialized(kGoe, EntropicIndex(1.0)), std::invalid_argument);
    EXPECT_THROW((void)tsallis_coeffs_specialized(kGse, EntropicIndex(0.5)), std::invalid_argument);
}

TEST(TsallisCoeffs, GeneralFormulaMatchesSpecializedForms) {
    for (int beta : {1, 2}) {
        for (double q : {0.0, 0.25, 0.5, 0.75, 0.9}) {
            const auto g = tsallis_coeffs(SymmetryClass(beta), EntropicIndex(q));
            const auto s = tsallis_coeffs_specialized(SymmetryClass(beta), EntropicIndex(q));
            EXPECT_LT(rel(g.a, s.a), 1e-12) << "beta=" << beta << " q=" << q;
            EXPECT_LT(rel(g.b, s.b), 1e-12) << "beta=" << beta << " q=" << q;
        }
    }
}

TEST(TsallisCoeffs, ScaleApproachesWignerLimit) {
    const double q = 0.999;
    const double b = tsallis_coeffs(kGoe, EntropicIndex(q)).b;
    EXPECT_LT(rel(b / (1 - q), pi / 4), 0.005);
    // Finite and well-conditioned even where Gamma itself would overflow.
    const auto c = tsallis_coeffs(kGse, EntropicIndex(1 - 1e-9));
    EXPECT_TRUE(std::isfinite(c.a));
    EXPECT_TRUE(std::isfinite(c.b));
}

TEST(TsallisPdf, SupportAndZeros) {
    const SpacingLaw law(kGoe, EntropicIndex(0.0));
    EXPECT_EQ(law.pdf(3.0), 0.0);
    EXPECT_EQ(law.pdf(0.0), 0.0);
    EXPECT_EQ(law.pdf(law.s_max()), 0.0);
    EXPECT_GT(law.pdf(law.s_max() * (1 - 1e-6)), 0.0);
    // Continuous at the edge.
    EXPECT_LT(law.pdf(law.s_max() * (1 - 1e-9)), 1e-10);
    for (int beta : {2, 4}) {
        EXPECT_EQ(SpacingLaw(SymmetryClass(beta), EntropicIndex(0.3)).pdf(0.0), 0.0);
    }
}

TEST(TsallisPdf, PeakLocationAtQZero) {
    const SpacingLaw law(kGoe, EntropicIndex(0.0));
    const double want = 1 / (2 * std::sqrt(law.b()));
    EXPECT_NEAR(want, 1.0185916358, 1e-9);
    const double got = grid_argmax([&](double s) { return law.pdf(s); }, 0.0, law.s_max(), 400000);
    EXPECT_NEAR(got, want, 1e-5);
}

TEST(TsallisPdf, WignerSentinelRoutesToSurmise) {
    for (int beta : {1, 2, 4}) {
        const SpacingLaw law(SymmetryClass(beta), EntropicIndex(1.0));
        for (double s : {0.1, 0.7, 1.3, 2.9}) EXPECT_EQ(law.pdf(s), wigner_pdf(SymmetryClass(beta), s));
    }
}

TEST(TsallisPdf, LogPdfConsistent) {
    const SpacingLaw law(kGue, EntropicIndex(0.4));
    for (double s : {0.05, 0.5, 1.0, 1.5}) EXPECT_NEAR(law.log_pdf(s), std::log(law.pdf(s)), 1e-12);
    EXPECT_TRUE(std::isinf(law.log_pdf(0.0)));
    EXPECT_TRUE(std::isinf(law.log_pdf(law.s_max() + 1)));
}

// Normalization and unit mean over the full (beta, q) grid.
class LawGrid : public ::testing::TestWithParam<std::tuple<int, double>> {};

TEST_P(LawGrid, NormalizedWithUnitMean) {
    const auto [beta, q] = GetParam();
    const SpacingLaw law{SymmetryClass(beta), EntropicIndex(q)};
    EXPECT_NEAR(oracle::moment(law, 0, law.s_max()), 1.0, 1e-8);
    EXPECT_NEAR(oracle::moment(law, 1, law.s_max()), 1.0, 1e-8);
}

TEST_P(LawGrid, CdfMatchesIncompleteBeta) {
    const auto [beta, q] = GetParam();
    const SpacingLaw law{SymmetryClass(beta), EntropicIndex(q)};
    for (int i = 0; i <= 20; ++i) {
        const double s = law.s_max() * i / 20.0;
        EXPECT_NEAR(law.cdf(s), oracle::incomplete_beta_cdf(law, s), 1e-9) << s;
    }
}

INSTANTIATE_TEST_SUITE_P(AllClasses, LawGrid,
                         ::testing::Combine(::testing::Values(1, 2, 4),
                                            ::testing::Values(0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)));

TEST(TsallisPdf, RecoversWignerNearQOne) {
    for (int beta : {1, 2, 4}) {
        const SpacingLaw law(SymmetryClass(beta), EntropicIndex(0.999));
        double gap = 0.0;
        for (int i = 0; i <= 3000; ++i) {
            const double s = 3.0 * i / 3000.0;
            gap = std::max(gap, std::abs(law.pdf(s) - wigner_pdf(SymmetryClass(beta), s)));
        }
        EXPECT_LT(gap, 0.01) << beta;
    }
}

TEST(TsallisCdf, EndpointsAndMedianRegion) {
    const SpacingLaw law(kGoe, EntropicIndex(0.0));
    EXPECT_EQ(law.cdf(0.0), 0.0);
    EXPECT_EQ(law.cdf(law.s_max()), 1.0);
    EXPECT_EQ(law.cdf(10.0), 1.0);
    // Frozen from high-precision quadrature of the closed-form density.
    EXPECT_NEAR(law.cdf(1.0187), 0.5129470852950061, 1e-10);
    EXPECT_GT(law.cdf(1.0187), 0.4);
    EXPECT_LT(law.cdf(1.0187), 0.7);
}

TEST(TsallisCdf, DerivativeIsPdf) {
    for (double q : {0.0, 0.5, 1.0}) {
        const SpacingLaw law(kGue, EntropicIndex(q));
        const double h = 1e-4;
        for (double s : {0.3, 0.8, 1.2, 1.7}) {
            const double fd = (law.cdf(s + h) - law.cdf(s - h)) / (2 * h);
            EXPECT_NEAR(fd, law.pdf(s), 1e-6) << "q=" << q << " s=" << s;
        }
    }
}

TEST(TsallisCdf, MonotoneOnRandomPoints) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2.5);
    for (int beta : {1, 2, 4}) {
        const SpacingLaw law(SymmetryClass(beta), EntropicIndex(0.2));
        for (int i = 0; i < 200; ++i) {
            double x = u(rng), y = u(rng);
            if (x > y) std::swap(x, y);
            EXPECT_LE(law.cdf(x), law.cdf(y));
        }
    }
}

TEST(Quantile, EndpointsAndErrors) {
    const SpacingLaw law(kGoe, EntropicIndex(0.3));
    EXPECT_EQ(law.quantile(0.0), 0.0);
    EXPECT_EQ(law.quantile(1.0), law.s_max());
    EXPECT_THROW((void)law.quantile(-0.1), std::invalid_argument);
    EXPECT_THROW((void)law.quantile(1.1), std::invalid_argument);
    EXPECT_TRUE(std::isinf(SpacingLaw(kGoe, EntropicIndex(1.0)).quantile(1.0)));
}

TEST(Quantile, InvertsCdf) {
    for (int beta : {1, 2, 4}) {
        for (double q : {0.0, 0.5, 0.9, 1.0}) {
            const SpacingLaw law{SymmetryClass(beta), EntropicIndex(q)};
            for (int i = 1; i <= 9; ++i) {
                const double p = i / 10.0;
                EXPECT_NEAR(law.cdf(law.quantile(p)), p, 1e-9) << beta << " " << q << " " << p;
            }
        }
    }
}
