#include "dtqw/walker_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtqw {

void LatticeSpec::validate() const {
    if (half_width < 0) {
        throw std::invalid_argument("LatticeSpec: half_width must be >= 0");
    }
}

double SpinVector::norm() const { return std::sqrt(std::norm(amp0) + std::norm(amp1)); }

SpinVector SpinVector::plus() {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return {{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}};
}

WalkerState::WalkerState(LatticeSpec lattice) : lattice_(lattice) {
    lattice_.validate();
    amps_.assign(2 * static_cast<size_t>(lattice_.site_count()), Complex{0.0, 0.0});
}

double WalkerState::norm() const {
    double total = 0.0;
    for (const Complex& a : amps_) total += std::norm(a);
    return std::sqrt(total);
}

WalkerState new_state(const SpinVector& spin, const LatticeSpec& lattice) {
    if (std::abs(spin.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("new_state: spin vector is not normalized");
    }
    WalkerState state(lattice);
    state.at(0, 0) = spin.amp0;
    state.at(1, 0) = spin.amp1;
    return state;
}

ProbabilityVector position_marginal(const WalkerState& state) {
    const int n = state.site_count();
    ProbabilityVector pd;
    pd.first_site = -state.half_width();
    pd.probs.resize(static_cast<size_t>(n));
    const Complex* up = state.row(0);
    const Complex* down = state.row(1);
    for (int i = 0; i < n; ++i) {
        double p = std::norm(up[i]) + std::norm(down[i]);
        pd.probs[static_cast<size_t>(i)] = p < 0.0 ? 0.0 : p;
    }
    return pd;
}

ProbabilityVector spin_marginal(const WalkerState& state) {
    ProbabilityVector pd;
    pd.first_site = 0;
    pd.probs.assign(2, 0.0);
    const int n = state.site_count();
    for (int s = 0; s < 2; ++s) {
        const Complex* r = state.row(s);
        double p = 0.0;
        for (int i = 0; i < n; ++i) p += std::norm(r[i]);
        pd.probs[static_cast<size_t>(s)] = p < 0.0 ? 0.0 : p;
    }
    return pd;
}

double ProbabilityVector::sum() const {
    double total = 0.0;
    for (double p : probs) total += p;
    return total;
}

Complex inner_product(const WalkerState& a, const WalkerState& b) {
    if (a.lattice() != b.lattice()) {
        throw std::invalid_argument("inner_product: lattice mismatch");
    }
    Complex result{0.0, 0.0};
    const auto& av = a.amplitudes();
    const auto& bv = b.amplitudes();
    for (size_t i = 0; i < av.size(); ++i) result += std::conj(av[i]) * bv[i];
    return result;
}

}  // namespace dtqw
