#include "qspacing/surmise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace qspacing {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Internal quadrature target; callers assert 1e-8.
constexpr double kQuadratureTol = 1e-10;
constexpr unsigned kQuadratureDepth = 25;

double lgam(double x) { return boost::math::lgamma(x); }

void require_super_extensive(EntropicIndex q) {
    if (q.value() >= 1.0) {
        throw std::invalid_argument("super-extensive coefficients need q < 1; route q = 1 to the Wigner surmise");
    }
}

}  // namespace

SpacingCoefficients wigner_coeffs(SymmetryClass cls) noexcept {
    switch (cls.beta()) {
        case 1:
            return {kPi / 2.0, kPi / 4.0, kInf};
        case 2:
            return {32.0 / (kPi * kPi), 4.0 / kPi, kInf};
        default:
            return {std::ldexp(1.0, 18) / (729.0 * kPi * kPi * kPi), 64.0 / (9.0 * kPi), kInf};
    }
}

double wigner_pdf(SymmetryClass cls, double s) noexcept {
    if (s <= 0.0) return 0.0;
    const auto c = wigner_coeffs(cls);
    return c.a * std::pow(s, cls.beta()) * std::exp(-c.b * s * s);
}

SpacingCoefficients tsallis_coeffs(SymmetryClass cls, EntropicIndex q) {
    require_super_extensive(q);
    const double beta = cls.beta();
    const double k = 1.0 / (1.0 - q.value());

    // b fixes the first moment to 1, a fixes the zeroth.
    const double log_sqrt_b = lgam((beta + 2.0) / 2.0) + lgam(2.0 + beta / 2.0 + k) - lgam((beta + 1.0) / 2.0) -
                              lgam(2.5 + beta / 2.0 + k);
    const double b = std::exp(2.0 * log_sqrt_b);
    const double log_a = std::log(2.0) + (beta + 1.0) * log_sqrt_b + lgam(2.0 + beta / 2.0 + k) -
                         lgam((beta + 1.0) / 2.0) - lgam(1.5 + k);
    return {std::exp(log_a), b, std::exp(-log_sqrt_b)};
}

SpacingCoefficients tsallis_coeffs_specialized(SymmetryClass cls, EntropicIndex q) {
    require_super_extensive(q);
    const double k = 1.0 / (1.0 - q.value());
    switch (cls.beta()) {
        case 1: {
            const double r = std::exp(lgam(2.5 + k) - lgam(3.0 + k));
            const double b = kPi / 4.0 * r * r;
            return {(2.0 * k + 3.0) * b, b, 1.0 / std::sqrt(b)};
        }
        case 2: {
            const double r = std::exp(lgam(3.0 + k) - lgam(3.5 + k));
            const double b = 4.0 / kPi * r * r;
            const double a = 4.0 * std::exp(lgam(3.0 + k) - lgam(1.5 + k)) / std::sqrt(kPi) * b * std::sqrt(b);
            return {a, b, 1.0 / std::sqrt(b)};
        }
        default:
            throw std::invalid_argument("no specialized closed form for beta = 4");
    }
}

SpacingLaw::SpacingLaw(SymmetryClass cls, EntropicIndex q)
    : cls_(cls),
      q_(q),
      coeffs_(q.is_wigner() ? wigner_coeffs(cls) : tsallis_coeffs(cls, q)),
      exponent_(q.is_wigner() ? kInf : 1.0 / (1.0 - q.value()) + 0.5) {}

double SpacingLaw::pdf(double s) const noexcept {
    if (s <= 0.0) return 0.0;
    if (q_.is_wigner()) return wigner_pdf(cls_, s);
    if (s >= coeffs_.s_max) return 0.0;
    const double x = std::sqrt(coeffs_.b) * s;
    return coeffs_.a * std::pow(s, cls_.beta()) * std::pow((1.0 - x) * (1.0 + x), exponent_);
}

double SpacingLaw::log_pdf(double s) const noexcept {
    if (s <= 0.0) return -kInf;
    const double log_a = std::log(coeffs_.a);
    const double beta = cls_.beta();
    if (q_.is_wigner()) return log_a + beta * std::log(s) - coeffs_.b * s * s;
    if (s >= coeffs_.s_max) return -kInf;
    return log_a + beta * std::log(s) + exponent_ * std::log1p(-coeffs_.b * s * s);
}

double SpacingLaw::cdf(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= coeffs_.s_max) return 1.0;
    auto f = [this](double x) { return pdf(x); };
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, 0.0, s, kQuadratureDepth, kQuadratureTol, &err);
    return std::clamp(value, 0.0, 1.0);
}

double SpacingLaw::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("quantile probability must lie in [0, 1]");
    }
    if (p == 0.0) return 0.0;
    if (p == 1.0) return coeffs_.s_max;

    double lo = 0.0;
    double hi = coeffs_.s_max;
    if (!std::isfinite(hi)) {
        hi = 2.0;
        while (cdf(hi) < p) hi *= 2.0;
    }

    // Newton on the CDF, falling back to bisection whenever a step leaves the bracket.
    double x = std::min(1.0, 0.5 * (lo + hi));
    for (int iter = 0; iter < 200; ++iter) {
        const double f = cdf(x) - p;
        if (std::abs(f) < 1e-13) break;
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
        const double density = pdf(x);
        double next = density > 0.0 ? x - f / density : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

}  // namespace qspacing
