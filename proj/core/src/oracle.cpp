#include "dtqw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtqw {

ProbabilityVector fold_unbounded(const ProbabilityVector& pd_inf, int half_width) {
    if (half_width < 1 || half_width % 2 == 0) {
        throw std::invalid_argument("fold_unbounded: half_width must be a positive odd number");
    }
    ProbabilityVector folded;
    folded.first_site = -half_width;
    folded.probs.assign(static_cast<size_t>(2 * half_width + 1), 0.0);

    for (size_t i = 0; i < pd_inf.probs.size(); ++i) {
        const int x = pd_inf.site_at(i);
        int target = x;
        if (x > half_width) {
            const int k = x - half_width;
            if (k > 2 * half_width + 1) {
                throw std::invalid_argument(
                    "fold_unbounded: tail needs more than one reflection (k > 2a+1)");
            }
            target = half_width - (k - 1);
        } else if (x < -half_width) {
            const int k = -x - half_width;
            if (k > 2 * half_width + 1) {
                throw std::invalid_argument(
                    "fold_unbounded: tail needs more than one reflection (k > 2a+1)");
            }
            target = -half_width + (k - 1);
        }
        folded.probs[static_cast<size_t>(target + half_width)] += pd_inf.probs[i];
    }
    return folded;
}

FoldReport fold_check(const WalkConfig& cfg) {
    if (cfg.lattice.mode != BoundaryMode::Bounded) {
        throw std::invalid_argument("fold_check: config must describe a bounded walk");
    }
    cfg.validate();

    WalkConfig unbounded_cfg = cfg;
    unbounded_cfg.lattice = {cfg.steps, BoundaryMode::Unbounded};

    const ProbabilityVector pd_inf = position_marginal(evolve(unbounded_cfg));
    const ProbabilityVector pd_bounded = position_marginal(evolve(cfg));
    const ProbabilityVector folded = fold_unbounded(pd_inf, cfg.lattice.half_width);

    FoldReport report;
    for (size_t i = 0; i < folded.probs.size(); ++i) {
        const double err = std::abs(folded.probs[i] - pd_bounded.probs[i]);
        if (err > report.max_abs_error) report.max_abs_error = err;
    }
    const int a = cfg.lattice.half_width;
    for (size_t i = 0; i < pd_inf.probs.size(); ++i) {
        const int x = pd_inf.site_at(i);
        if ((x > a || x < -a) && pd_inf.probs[i] > 0.0) {
            const int mirror = x > a ? a - (x - a - 1) : -a + (-x - a - 1);
            report.site_pairs.push_back(
                {x, mirror, pd_inf.probs[i], pd_bounded.at_site(mirror)});
        }
    }
    return report;
}

WalkerState finite_diff_state(const WalkConfig& cfg, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite_diff_state: h must be > 0");
    }
    const WalkerState plus = evolve(cfg.with_omega(cfg.field.omega + h));
    const WalkerState minus = evolve(cfg.with_omega(cfg.field.omega - h));
    WalkerState diff(cfg.lattice);
    auto& out = diff.amplitudes();
    const auto& p = plus.amplitudes();
    const auto& m = minus.amplitudes();
    for (size_t i = 0; i < out.size(); ++i) out[i] = (p[i] - m[i]) / (2.0 * h);
    return diff;
}

double qfi_fidelity_fd(const WalkConfig& cfg, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("qfi_fidelity_fd: h must be > 0");
    }
    const WalkerState psi = evolve(cfg);
    const WalkerState shifted = evolve(cfg.with_omega(cfg.field.omega + h));
    return 8.0 * (1.0 - std::abs(inner_product(psi, shifted))) / (h * h);
}

double laplace_residual_of(const std::function<double(double, double)>& u,
                           const ScalarGrid& theta_grid, const ScalarGrid& omega_grid) {
    theta_grid.validate();
    omega_grid.validate();
    const double h = theta_grid.spacing();
    if (std::abs(h - omega_grid.spacing()) > 1e-12 * std::max(1.0, std::abs(h))) {
        throw std::invalid_argument("laplace_residual: grids must share the same spacing");
    }

    std::vector<std::vector<double>> values(static_cast<size_t>(theta_grid.count));
    for (int i = 0; i < theta_grid.count; ++i) {
        values[static_cast<size_t>(i)].resize(static_cast<size_t>(omega_grid.count));
        for (int j = 0; j < omega_grid.count; ++j) {
            values[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                u(theta_grid.value(i), omega_grid.value(j));
        }
    }

    double worst = 0.0;
    for (int i = 1; i + 1 < theta_grid.count; ++i) {
        for (int j = 1; j + 1 < omega_grid.count; ++j) {
            const auto& v = values;
            const double center = v[i][j];
            const double residual = (v[i + 1][j] + v[i - 1][j] + v[i][j + 1] + v[i][j - 1] -
                                     4.0 * center) /
                                    (h * h);
            worst = std::max(worst, std::abs(residual));
        }
    }
    return worst;
}

double laplace_residual(const ScalarGrid& theta_grid, const ScalarGrid& omega_grid, int steps,
                        const SpinVector& spin, int half_width) {
    WalkConfig base;
    base.initial_spin = spin;
    base.steps = steps;
    base.lattice = {half_width, BoundaryMode::Bounded};
    return laplace_residual_of(
        [&](double theta, double omega) {
            WalkConfig cfg = base;
            cfg.theta = theta;
            cfg.field = FieldSpec::along_x(omega);
            return moments(position_marginal(evolve(cfg))).variance;
        },
        theta_grid, omega_grid);
}

// Deliberately self-contained: plain per-site pair arrays and inline coin
// arithmetic, sharing no code with the operators/evolution modules.
ProbabilityVector reference_walk_pd(double coin_angle, const SpinVector& spin, int steps) {
    if (steps < 0) {
        throw std::invalid_argument("reference_walk_pd: steps must be >= 0");
    }
    const int n = 2 * steps + 1;
    std::vector<Complex> up(static_cast<size_t>(n)), down(static_cast<size_t>(n));
    std::vector<Complex> next_up(static_cast<size_t>(n)), next_down(static_cast<size_t>(n));
    up[static_cast<size_t>(steps)] = spin.amp0;
    down[static_cast<size_t>(steps)] = spin.amp1;

    const double c = std::cos(coin_angle);
    const double s = std::sin(coin_angle);
    for (int t = 0; t < steps; ++t) {
        std::fill(next_up.begin(), next_up.end(), Complex{});
        std::fill(next_down.begin(), next_down.end(), Complex{});
        for (int i = 0; i < n; ++i) {
            const Complex a = up[static_cast<size_t>(i)];
            const Complex b = down[static_cast<size_t>(i)];
            if (a == Complex{} && b == Complex{}) continue;
            const Complex rotated_up = c * a - Complex{0.0, s} * b;
            const Complex rotated_down = -Complex{0.0, s} * a + c * b;
            if (i > 0) next_up[static_cast<size_t>(i - 1)] += rotated_up;
            if (i + 1 < n) next_down[static_cast<size_t>(i + 1)] += rotated_down;
        }
        up.swap(next_up);
        down.swap(next_down);
    }

    ProbabilityVector pd;
    pd.first_site = -steps;
    pd.probs.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        pd.probs[static_cast<size_t>(i)] =
            std::norm(up[static_cast<size_t>(i)]) + std::norm(down[static_cast<size_t>(i)]);
    }
    return pd;
}

}  // namespace dtqw
