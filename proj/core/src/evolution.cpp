#include "dtqw/evolution.hpp"

#include <stdexcept>

namespace dtqw {

void WalkConfig::validate() const {
    lattice.validate();
    field.validate();
    if (steps < 0) {
        throw std::invalid_argument("WalkConfig: steps must be >= 0");
    }
    if (std::abs(initial_spin.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("WalkConfig: initial spin is not normalized");
    }
    if (lattice.mode == BoundaryMode::Bounded && lattice.half_width < 1) {
        throw std::invalid_argument("WalkConfig: bounded walks need half_width >= 1");
    }
    if (lattice.mode == BoundaryMode::Unbounded && lattice.half_width < steps) {
        throw std::invalid_argument("WalkConfig: unbounded walks need half_width >= steps");
    }
}

WalkerState step(const WalkerState& state, const CoinMatrix& coin_matrix) {
    WalkerState out = state;
    detail::apply_coin_inplace(out, coin_matrix);
    detail::apply_shift_inplace(out);
    return out;
}

WalkerState evolve(const WalkConfig& cfg) {
    cfg.validate();
    const CoinMatrix cb = effective_coin(cfg.theta, cfg.field);
    WalkerState psi = new_state(cfg.initial_spin, cfg.lattice);
    for (int t = 0; t < cfg.steps; ++t) {
        detail::apply_coin_inplace(psi, cb);
        detail::apply_shift_inplace(psi);
    }
    return psi;
}

DerivativePair evolve_with_derivative(const WalkConfig& cfg) {
    cfg.validate();
    const CoinMatrix cb = effective_coin(cfg.theta, cfg.field);
    const CoinMatrix dcb = effective_coin_domega(cfg.theta, cfg.field);

    DerivativePair pair{new_state(cfg.initial_spin, cfg.lattice), WalkerState(cfg.lattice)};
    const int n = pair.state.site_count();

    for (int t = 0; t < cfg.steps; ++t) {
        // d <- shift(C_B d + dC_B psi), using psi from the previous step
        Complex* dup = pair.dstate.row(0);
        Complex* ddown = pair.dstate.row(1);
        const Complex* up = pair.state.row(0);
        const Complex* down = pair.state.row(1);
        for (int i = 0; i < n; ++i) {
            const Complex d0 = dup[i];
            const Complex d1 = ddown[i];
            dup[i] = cb.m00 * d0 + cb.m01 * d1 + dcb.m00 * up[i] + dcb.m01 * down[i];
            ddown[i] = cb.m10 * d0 + cb.m11 * d1 + dcb.m10 * up[i] + dcb.m11 * down[i];
        }
        detail::apply_shift_inplace(pair.dstate);

        // psi <- shift(C_B psi), the exact operation sequence of evolve()
        detail::apply_coin_inplace(pair.state, cb);
        detail::apply_shift_inplace(pair.state);
    }
    return pair;
}

}  // namespace dtqw
