#include "qspacing/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qspacing {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Minimum {
    double q;
    double value;
};

// NaN compares as worse than anything.
bool better(double lhs, double rhs) {
    if (std::isnan(lhs)) return false;
    if (std::isnan(rhs)) return true;
    return lhs < rhs;
}

// Coarse grid on [lo, hi] at multiples of kGridStep (plus both ends), then
// golden-section refinement inside the bracket around the best grid point.
// Ties go to the smaller q.
Minimum minimize_on_interval(const std::function<double(double)>& objective, double lo, double hi) {
    std::vector<double> grid{lo};
    for (int k = static_cast<int>(std::floor(lo / kGridStep)) + 1;; ++k) {
        const double q = k * kGridStep;
        if (q >= hi - 1e-12) break;
        if (q > lo + 1e-12) grid.push_back(q);
    }
    if (hi > lo) grid.push_back(hi);

    std::vector<double> values(grid.size());
    std::transform(grid.begin(), grid.end(), values.begin(), objective);
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (better(values[i], values[best])) best = i;
    }
    Minimum result{grid[best], values[best]};
    if (grid.size() < 2) return result;

    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kRefineTol) {
        if (!better(fd, fc)) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    const double q_mid = 0.5 * (a + b);
    const double f_mid = objective(q_mid);
    if (better(f_mid, result.value)) result = {q_mid, f_mid};
    return result;
}

FitResult finish(FitMethod method, Minimum finite, double wigner_value, std::size_t n, double lo) {
    FitResult r;
    r.method = method;
    r.n_samples = n;
    if (better(wigner_value, finite.value)) {
        r.q_hat = 1.0;
        r.objective = wigner_value;
    } else {
        r.q_hat = finite.q;
        r.objective = finite.value;
    }
    r.at_boundary = r.q_hat == 1.0 || r.q_hat == kMaxFiniteQ || (r.q_hat == 0.0 && lo == 0.0);
    return r;
}

}  // namespace

std::string_view to_string(FitMethod m) noexcept { return m == FitMethod::HistLS ? "HIST_LS" : "MLE"; }

FitMethod parse_fit_method(std::string_view text) {
    if (text == "ls" || text == "HIST_LS" || text == "hist-ls") return FitMethod::HistLS;
    if (text == "mle" || text == "MLE") return FitMethod::MLE;
    throw std::invalid_argument("fit method must be 'ls' or 'mle'");
}

double ls_objective(const HistogramDensity& hist, const SpacingLaw& law) {
    double sum = 0.0;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        // Beyond the support the model is zero and the whole density is residual.
        const double r = hist.density[i] - law.pdf(hist.midpoint(i));
        sum += r * r;
    }
    return sum;
}

FitResult fit_q_ls(const HistogramDensity& hist, SymmetryClass cls) {
    if (hist.bins() == 0) throw std::invalid_argument("fit_q_ls: empty histogram");
    auto objective = [&](double q) { return ls_objective(hist, SpacingLaw(cls, EntropicIndex(q))); };
    const Minimum finite = minimize_on_interval(objective, 0.0, kMaxFiniteQ);
    return finish(FitMethod::HistLS, finite, objective(1.0), hist.samples, 0.0);
}

double negative_log_likelihood(std::span<const double> spacings, const SpacingLaw& law) {
    double sum = 0.0;
    for (double s : spacings) {
        if (s <= 0.0) continue;
        sum += law.log_pdf(s);
    }
    return -sum;
}

FitResult fit_q_mle(std::span<const double> spacings, SymmetryClass cls) {
    if (spacings.empty()) throw std::invalid_argument("fit_q_mle: no spacings");
    for (double s : spacings) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("fit_q_mle: spacings must be nonnegative");
    }
    const double top = *std::max_element(spacings.begin(), spacings.end());
    auto covers = [&](double q) { return tsallis_coeffs(cls, EntropicIndex(q)).s_max > top; };
    auto objective = [&](double q) { return negative_log_likelihood(spacings, SpacingLaw(cls, EntropicIndex(q))); };
    const double wigner = objective(1.0);

    if (!covers(kMaxFiniteQ)) {
        FitResult r;
        r.q_hat = 1.0;
        r.method = FitMethod::MLE;
        r.objective = wigner;
        r.at_boundary = true;
        r.feasible = false;
        r.n_samples = spacings.size();
        return r;
    }

    // s_max grows with q, so the feasible set is an interval [q_min, 1).
    double lo = 0.0;
    if (!covers(0.0)) {
        double infeasible = 0.0;
        double feasible = kMaxFiniteQ;
        for (int i = 0; i < 100 && feasible - infeasible > 1e-13; ++i) {
            const double mid = 0.5 * (infeasible + feasible);
            (covers(mid) ? feasible : infeasible) = mid;
        }
        lo = feasible;
    }
    const Minimum finite = minimize_on_interval(objective, lo, kMaxFiniteQ);
    return finish(FitMethod::MLE, finite, wigner, spacings.size(), lo);
}

double ks_distance(std::span<const double> spacings, const SpacingLaw& law) {
    if (spacings.empty()) throw std::invalid_argument("ks_distance: no data");
    std::vector<double> sorted(spacings.begin(), spacings.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = law.cdf(sorted[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return std::clamp(d, 0.0, 1.0);
}

std::string to_csv_row(const FitResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g,%d,%d,%zu", std::string(to_string(r.method)).c_str(), r.q_hat,
                  r.objective, r.at_boundary ? 1 : 0, r.feasible ? 1 : 0, r.n_samples);
    return buf;
}

}  // namespace qspacing
