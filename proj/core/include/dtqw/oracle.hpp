// oracle.hpp
// Independent cross-check implementations used by the test suite and the
// fold-check subcommand: finite-difference derivative states, fidelity-based
// QFI, a standalone reference walk, and the boundary folding identity.

#pragma once

#include <functional>

#include "dtqw/evolution.hpp"
#include "dtqw/sweep.hpp"

namespace dtqw {

struct FoldPair {
    int unbounded_site = 0;
    int bounded_site = 0;
    double p_unbounded = 0.0;
    double p_bounded = 0.0;
};

struct FoldReport {
    double max_abs_error = 0.0;
    std::vector<FoldPair> site_pairs;
};

// Reflects probability mass beyond ±a inward about the lines ±(a+0.5):
// p_inf(x = a+k) accumulates onto x = a-(k-1), mirrored on the left tail.
// Requires odd a (the regime where reflected mass lands on empty sites) and
// rejects tails that would need more than one reflection (k > 2a+1).
ProbabilityVector fold_unbounded(const ProbabilityVector& pd_inf, int half_width);

// Runs the bounded walk of cfg and its unbounded twin (half_width = steps),
// folds the unbounded PD and compares site by site.
FoldReport fold_check(const WalkConfig& cfg);

// (evolve(omega+h) - evolve(omega-h)) / 2h, elementwise.
WalkerState finite_diff_state(const WalkConfig& cfg, double h);

// 8(1 - |<Psi(omega)|Psi(omega+h)>|)/h^2, the fidelity expansion of the
// pure-state QFI.
double qfi_fidelity_fd(const WalkConfig& cfg, double h);

// Max 5-point Laplacian residual |u_ww + u_tt| over interior points of a
// uniform (theta, omega) grid with equal spacings. Diagnostic only: the
// closed-form variance has an absolute-value kink, so the residual is not
// expected to vanish and is never asserted against.
double laplace_residual_of(const std::function<double(double, double)>& u,
                           const ScalarGrid& theta_grid, const ScalarGrid& omega_grid);

// Same residual with u = simulated position variance of the x-field walk.
double laplace_residual(const ScalarGrid& theta_grid, const ScalarGrid& omega_grid, int steps,
                        const SpinVector& spin, int half_width);

// Textbook field-free DTQW written independently of the operators/evolution
// modules; used as the oracle for the field-free evolution path.
ProbabilityVector reference_walk_pd(double coin_angle, const SpinVector& spin, int steps);

}  // namespace dtqw
