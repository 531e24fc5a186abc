#include "dtqw/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace dtqw {

namespace {
// Below this, a marginal probability is treated as an exact structural zero;
// its amplitudes vanish too, so the limit contribution to the FI is 0.
constexpr double kProbabilityFloor = 1e-15;
constexpr double kQfiFloor = 1e-12;
}  // namespace

void PhysicalConstants::validate() const {
    if (mu_bohr <= 0.0 || hbar <= 0.0) {
        throw std::invalid_argument("PhysicalConstants: mu_bohr and hbar must be > 0");
    }
}

double qfi(const DerivativePair& pair) {
    const Complex overlap = inner_product(pair.state, pair.dstate);
    const double dnorm2 = inner_product(pair.dstate, pair.dstate).real();
    const double h = 4.0 * (dnorm2 - std::norm(overlap));
    return h < 0.0 ? 0.0 : h;
}

double position_fi(const DerivativePair& pair) {
    const int n = pair.state.site_count();
    const Complex* up = pair.state.row(0);
    const Complex* down = pair.state.row(1);
    const Complex* dup = pair.dstate.row(0);
    const Complex* ddown = pair.dstate.row(1);

    double fi = 0.0;
    for (int i = 0; i < n; ++i) {
        const double p = std::norm(up[i]) + std::norm(down[i]);
        if (p < kProbabilityFloor) continue;
        const double dp =
            2.0 * (std::conj(up[i]) * dup[i] + std::conj(down[i]) * ddown[i]).real();
        fi += dp * dp / p;
    }
    return fi;
}

double spin_fi(const DerivativePair& pair) {
    const int n = pair.state.site_count();
    double fi = 0.0;
    for (int s = 0; s < 2; ++s) {
        const Complex* row = pair.state.row(s);
        const Complex* drow = pair.dstate.row(s);
        double p = 0.0;
        Complex acc{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            p += std::norm(row[i]);
            acc += std::conj(row[i]) * drow[i];
        }
        if (p < kProbabilityFloor) continue;
        const double dp = 2.0 * acc.real();
        fi += dp * dp / p;
    }
    return fi;
}

double efficiency_ratio(double fi, double qfi_value) {
    if (qfi_value < kQfiFloor) return 0.0;
    return fi / qfi_value;
}

double crb_rmse_omega(double fi_max, int measurements) {
    if (fi_max <= 0.0) {
        throw std::invalid_argument("crb_rmse_omega: Fisher information must be > 0");
    }
    if (measurements < 1) {
        throw std::invalid_argument("crb_rmse_omega: measurement count must be >= 1");
    }
    return 1.0 / std::sqrt(measurements * fi_max);
}

double omega_to_tesla(double delta_omega, const PhysicalConstants& constants) {
    constants.validate();
    return 2.0 * delta_omega / std::abs(constants.gamma());
}

double fi_omega_to_fi_field(double fi_omega, const PhysicalConstants& constants) {
    constants.validate();
    const double half_gamma = constants.gamma() / 2.0;
    return half_gamma * half_gamma * fi_omega;
}

FisherReport fisher_report(const WalkConfig& cfg) {
    const DerivativePair pair = evolve_with_derivative(cfg);
    FisherReport r;
    r.omega = cfg.field.omega;
    r.qfi = qfi(pair);
    r.position_fi = position_fi(pair);
    r.spin_fi = spin_fi(pair);
    r.ratio_position = efficiency_ratio(r.position_fi, r.qfi);
    r.ratio_spin = efficiency_ratio(r.spin_fi, r.qfi);
    return r;
}

}  // namespace dtqw
