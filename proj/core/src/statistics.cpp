#include "dtqw/statistics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtqw {

void SphereGrid::validate() const {
    if (polar_count < 2 || azimuth_count < 2) {
        throw std::invalid_argument("SphereGrid: polar_count and azimuth_count must be >= 2");
    }
}

MomentSummary moments(const ProbabilityVector& pd) {
    MomentSummary m;
    for (size_t i = 0; i < pd.probs.size(); ++i) {
        m.mean += pd.site_at(i) * pd.probs[i];
    }
    for (size_t i = 0; i < pd.probs.size(); ++i) {
        const double d = pd.site_at(i) - m.mean;
        m.variance += d * d * pd.probs[i];
    }
    const double sigma = std::sqrt(m.variance);
    if (sigma >= 1e-12) {
        for (size_t i = 0; i < pd.probs.size(); ++i) {
            const double z = (pd.site_at(i) - m.mean) / sigma;
            m.skewness += z * z * z * pd.probs[i];
        }
    }
    return m;
}

double variance_difference(const WalkConfig& cfg) {
    const double with_field = moments(position_marginal(evolve(cfg))).variance;
    const double without_field = moments(position_marginal(evolve(cfg.with_omega(0.0)))).variance;
    return std::abs(with_field - without_field);
}

double closed_form_variance_x(int steps, double theta, double omega) {
    const double t = static_cast<double>(steps);
    return t * t * (1.0 - std::abs(std::sin(omega - theta)));
}

std::pair<double, double> first_step_probs(double theta, double omega) {
    const double skew = std::sin(2.0 * omega) * std::sin(2.0 * theta);
    return {(1.0 + skew) / 2.0, (1.0 - skew) / 2.0};
}

std::vector<SphereSample> sphere_directions(const SphereGrid& grid) {
    grid.validate();
    std::vector<SphereSample> samples;
    for (int i = 0; i < grid.polar_count; ++i) {
        const double polar = std::numbers::pi * i / (grid.polar_count - 1);
        const bool pole = (i == 0 || i == grid.polar_count - 1);
        const int azimuth_steps = pole ? 1 : grid.azimuth_count;
        for (int j = 0; j < azimuth_steps; ++j) {
            const double azimuth =
                grid.azimuth_offset + 2.0 * std::numbers::pi * j / grid.azimuth_count;
            SphereSample s;
            s.polar_index = i;
            s.azimuth_index = j;
            s.direction = {std::sin(polar) * std::cos(azimuth),
                           std::sin(polar) * std::sin(azimuth), std::cos(polar)};
            if (pole) s.direction = {0.0, 0.0, i == 0 ? 1.0 : -1.0};
            samples.push_back(s);
        }
    }
    return samples;
}

std::vector<SphereSample> sphere_scan(double omega, double theta, const SpinVector& spin,
                                      int steps, int half_width, const SphereGrid& grid) {
    WalkConfig base;
    base.theta = theta;
    base.initial_spin = spin;
    base.steps = steps;
    base.lattice = {half_width, BoundaryMode::Bounded};

    std::vector<SphereSample> samples = sphere_directions(grid);
    for (SphereSample& s : samples) {
        WalkConfig cfg = base;
        cfg.field = FieldSpec{omega, s.direction};
        s.delta_variance = variance_difference(cfg);
    }
    return samples;
}

}  // namespace dtqw
