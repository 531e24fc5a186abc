// evolution.hpp
// Advances the walker through T steps under a static field, optionally
// co-propagating the analytic omega-derivative state used for FI/QFI.

#pragma once

#include "dtqw/operators.hpp"
#include "dtqw/walker_state.hpp"

namespace dtqw {

// Everything a walk run needs. Bounded mode requires a >= 1, unbounded
// mode a >= steps (so no amplitude reaches the array edge).
struct WalkConfig {
    double theta = 0.0;
    FieldSpec field;
    SpinVector initial_spin = SpinVector::plus();
    int steps = 0;
    LatticeSpec lattice;

    void validate() const;

    WalkConfig with_omega(double omega) const {
        WalkConfig c = *this;
        c.field.omega = omega;
        return c;
    }
    WalkConfig with_theta(double theta_) const {
        WalkConfig c = *this;
        c.theta = theta_;
        return c;
    }
};

// |Psi(t)> and |∂_ω Psi(t)> propagated jointly. dstate is not normalized;
// norm conservation differentiated gives Re<state|dstate> = 0.
struct DerivativePair {
    WalkerState state;
    WalkerState dstate;
};

// One walk step: apply the coin to every site's spin pair, then shift.
WalkerState step(const WalkerState& state, const CoinMatrix& coin_matrix);

// T applications of step with effective_coin(theta, field).
WalkerState evolve(const WalkConfig& cfg);

// Product-rule recursion: |∂Psi(t)> = Λ C_B |∂Psi(t-1)> + Λ (∂C_B)|Psi(t-1)>,
// with ∂Psi(0) = 0. The state component is bitwise identical to evolve(cfg).
DerivativePair evolve_with_derivative(const WalkConfig& cfg);

}  // namespace dtqw
