// operators.hpp
// 2x2 spin-space operators (coins, field unitaries, effective coins and their
// omega-derivatives) and the spin-conditioned shift on walker states.

#pragma once

#include <array>

#include "dtqw/walker_state.hpp"

namespace dtqw {

// 2x2 complex matrix acting on the spin space. Coins and field unitaries are
// unitary; derivative matrices are not and are never fed to the walk as coins.
struct CoinMatrix {
    Complex m00, m01, m10, m11;

    CoinMatrix operator*(const CoinMatrix& rhs) const;
    CoinMatrix operator-() const { return {-m00, -m01, -m10, -m11}; }

    // max elementwise deviation of M†M from the identity
    double unitarity_error() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_error() <= tol; }

    static CoinMatrix identity() { return {{1, 0}, {0, 0}, {0, 0}, {1, 0}}; }
};

// Static homogeneous field B = B0 n̂, parameterized by omega = gamma*B0/2
// (dimensionless, tau = 1 s) and the unit direction vector.
struct FieldSpec {
    double omega = 0.0;
    std::array<double, 3> direction{0.0, 0.0, 1.0};

    void validate(double tol = 1e-9) const;  // unit-norm direction

    static FieldSpec along_x(double omega) { return {omega, {1.0, 0.0, 0.0}}; }
    static FieldSpec along_y(double omega) { return {omega, {0.0, 1.0, 0.0}}; }
    static FieldSpec along_z(double omega) { return {omega, {0.0, 0.0, 1.0}}; }
};

// e^{i tau} [[e^{i xi} cos θ, e^{i zeta} sin θ], [-e^{-i zeta} sin θ, e^{-i xi} cos θ]]
// Unitary for all inputs; reduces to coin(theta) at (0, 0, -pi/2, theta).
CoinMatrix general_coin(double tau, double xi, double zeta, double theta);

// exp(-i θ σ_x) = [[cos θ, -i sin θ], [-i sin θ, cos θ]]
CoinMatrix coin(double theta);

// cos(ωt) I + i (σ·n̂) sin(ωt)
CoinMatrix field_unitary(const FieldSpec& field, double t);

// C(θ) · U_B(1): how the field enters each walk step.
CoinMatrix effective_coin(double theta, const FieldSpec& field);

// Elementwise ∂/∂ω of effective_coin. Not unitary.
CoinMatrix effective_coin_domega(double theta, const FieldSpec& field);

// Spin-conditioned translation: spin-0 amplitude moves one site left, spin-1
// one site right. Bounded lattices reflect at the edges with a spin flip
// (spin-0 at -a becomes spin-1 at -a, spin-1 at +a becomes spin-0 at +a).
// Unbounded lattices must never carry amplitude at |x| = a; that is rejected.
WalkerState apply_shift(const WalkerState& state);

namespace detail {
// In-place kernels shared by apply_shift and the evolution loops.
void apply_coin_inplace(WalkerState& state, const CoinMatrix& c);
void apply_shift_inplace(WalkerState& state);
}  // namespace detail

}  // namespace dtqw
