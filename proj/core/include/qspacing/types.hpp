#pragma once

#include <stdexcept>
#include <string>

namespace qspacing {

/// Dyson index of a Gaussian ensemble: 1 (orthogonal), 2 (unitary) or 4 (symplectic).
class SymmetryClass {
public:
    explicit SymmetryClass(int beta) : beta_(beta) {
        if (beta != 1 && beta != 2 && beta != 4) {
            throw std::invalid_argument("symmetry class must be 1, 2 or 4, got " + std::to_string(beta));
        }
    }

    [[nodiscard]] int beta() const noexcept { return beta_; }

    friend bool operator==(SymmetryClass, SymmetryClass) = default;

private:
    int beta_;
};

/// Tsallis entropic index restricted to the super-extensive side, 0 <= q <= 1.
/// q == 1 is the Gaussian (Wigner) limit.
class EntropicIndex {
public:
    explicit EntropicIndex(double q) : q_(q) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::invalid_argument("entropic index must lie in [0, 1], got " + std::to_string(q));
        }
    }

    [[nodiscard]] double value() const noexcept { return q_; }
    [[nodiscard]] bool is_wigner() const noexcept { return q_ == 1.0; }

    friend bool operator==(EntropicIndex, EntropicIndex) = default;

private:
    double q_;
};

}  // namespace qspacing
