// Shared helpers for the unit tests.

#pragma once

#include <cmath>
#include <random>

#include "doctest.h"
#include "dtqw/evolution.hpp"

namespace dtqw_test {

inline double max_abs_diff(const dtqw::WalkerState& a, const dtqw::WalkerState& b) {
    REQUIRE(a.amplitudes().size() == b.amplitudes().size());
    double worst = 0.0;
    for (size_t i = 0; i < a.amplitudes().size(); ++i) {
        worst = std::max(worst, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return worst;
}

inline double max_abs_diff(const dtqw::CoinMatrix& a, const dtqw::CoinMatrix& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01),
                     std::abs(a.m10 - b.m10), std::abs(a.m11 - b.m11)});
}

inline void check_matrix_close(const dtqw::CoinMatrix& actual, const dtqw::CoinMatrix& expected,
                               double tol) {
    CHECK(max_abs_diff(actual, expected) <= tol);
}

inline dtqw::WalkConfig make_config(double theta, const dtqw::FieldSpec& field,
                                    const dtqw::SpinVector& spin, int steps, int half_width,
                                    dtqw::BoundaryMode mode = dtqw::BoundaryMode::Bounded) {
    dtqw::WalkConfig cfg;
    cfg.theta = theta;
    cfg.field = field;
    cfg.initial_spin = spin;
    cfg.steps = steps;
    cfg.lattice = {half_width, mode};
    return cfg;
}

// fixed-seed generator so property tests are reproducible
inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline double random_angle() {
    std::uniform_real_distribution<double> dist(-2.0 * 3.141592653589793, 2.0 * 3.141592653589793);
    return dist(rng());
}

inline std::array<double, 3> random_direction() {
    std::normal_distribution<double> dist(0.0, 1.0);
    double x = dist(rng()), y = dist(rng()), z = dist(rng());
    const double len = std::sqrt(x * x + y * y + z * z);
    return {x / len, y / len, z / len};
}

inline dtqw::SpinVector random_spin() {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const double polar = dist(rng()) * 3.141592653589793;
    const double phase = dist(rng()) * 2.0 * 3.141592653589793;
    return {{std::cos(polar / 2.0), 0.0},
            {std::sin(polar / 2.0) * std::cos(phase), std::sin(polar / 2.0) * std::sin(phase)}};
}

}  // namespace dtqw_test
