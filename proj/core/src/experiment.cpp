#include "qspacing/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace qspacing {

UnfoldedSpacings ensemble_spacings(const MixConfig& cfg, UnfoldOptions unfold_opts, unsigned threads) {
    validate(cfg);
    std::vector<std::optional<UnfoldedSpacings>> parts(cfg.members);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t m = next++; m < cfg.members; m = next++) {
            try {
                parts[m] = unfold(eigenvalues(mixed_hamiltonian(cfg, m)), unfold_opts);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const unsigned n_workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cfg.members));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<UnfoldedSpacings> ordered;
    ordered.reserve(parts.size());
    for (auto& p : parts) ordered.push_back(std::move(*p));
    return UnfoldedSpacings::pool(ordered);
}

UnfoldedSpacings oscillator_spacings(const OscillatorConfig& cfg, UnfoldOptions unfold_opts) {
    validate(cfg);
    return unfold(ho_spectrum(cfg), unfold_opts);
}

TransitionPoint transition_point(const MixConfig& cfg, UnfoldOptions unfold_opts, double bin_width, FitMethod method,
                                 unsigned threads) {
    UnfoldedSpacings spacings = ensemble_spacings(cfg, unfold_opts, threads);
    HistogramDensity hist = histogram(spacings, bin_width);
    const SymmetryClass cls = cfg.perturbation.cls;
    FitResult fit = method == FitMethod::HistLS ? fit_q_ls(hist, cls) : fit_q_mle(spacings, cls);
    return TransitionPoint{cfg.g, std::move(spacings), std::move(hist), fit};
}

double histogram_peak(const HistogramDensity& hist) {
    const auto it = std::max_element(hist.density.begin(), hist.density.end());
    return hist.midpoint(static_cast<std::size_t>(it - hist.density.begin()));
}

}  // namespace qspacing
