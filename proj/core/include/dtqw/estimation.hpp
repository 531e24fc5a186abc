// estimation.hpp
// Quantum estimation toolkit: pure-state quantum Fisher information,
// Fisher information of position/spin measurements, POVM efficiency ratios,
// the Cramér–Rao RMSE bound, and conversion to physical field units.

#pragma once

#include "dtqw/evolution.hpp"

namespace dtqw {

struct FisherReport {
    double omega = 0.0;
    double qfi = 0.0;            // H, per omega^2
    double position_fi = 0.0;    // F_px
    double spin_fi = 0.0;        // F_sx
    double ratio_position = 0.0; // F_px / H, 0/0 reported as 0
    double ratio_spin = 0.0;     // F_sx / H
};

// gamma = g_s * mu_B / hbar. Defaults: electron g-factor from the walk's
// target system, CODATA-2018 mu_B and hbar.
struct PhysicalConstants {
    double g_s = -2.0023;
    double mu_bohr = 9.2740100783e-24;  // J/T
    double hbar = 1.054571817e-34;      // J s

    double gamma() const { return g_s * mu_bohr / hbar; }
    void validate() const;  // mu_bohr, hbar > 0
};

// H = 4(<dPsi|dPsi> - |<Psi|dPsi>|^2), the pure-state value of Tr[rho L^2]
// with L = 2 d(rho). Tiny negative rounding results are clamped to 0.
double qfi(const DerivativePair& pair);

// F = sum_x (dp(x))^2 / p(x) over the position marginal, with
// dp(x) = 2 Re sum_s conj(psi(s,x)) dpsi(s,x). Sites with p < 1e-15
// contribute exactly 0 in the limit and are skipped.
double position_fi(const DerivativePair& pair);

// Same formula over the two spin-marginal probabilities.
double spin_fi(const DerivativePair& pair);

// F/H, with 0 returned when H < 1e-12 (0/0 convention).
double efficiency_ratio(double fi, double qfi_value);

// Cramér–Rao lower bound on the RMSE of an omega estimate from M
// measurements: 1/sqrt(M * fi_max). Rejects fi_max <= 0 and M < 1.
double crb_rmse_omega(double fi_max, int measurements);

// delta_B = 2 * delta_omega / |gamma|
double omega_to_tesla(double delta_omega, const PhysicalConstants& constants = {});

// F_B0 = (gamma/2)^2 * F_omega
double fi_omega_to_fi_field(double fi_omega, const PhysicalConstants& constants = {});

// Convenience: evolve with derivative and assemble every Fisher quantity.
FisherReport fisher_report(const WalkConfig& cfg);

}  // namespace dtqw
