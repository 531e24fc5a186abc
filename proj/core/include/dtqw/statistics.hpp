// statistics.hpp
// Position-distribution diagnostics: moments, field-induced variance change,
// the closed-form variance predictor for x-fields, first-step skew
// probabilities, and the spherical delta-variance scan.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dtqw/evolution.hpp"

namespace dtqw {

struct MomentSummary {
    double mean = 0.0;      // sites
    double variance = 0.0;  // sites^2
    double skewness = 0.0;  // third standardized moment; 0 when sigma < 1e-12
};

// Regular (polar x azimuth) product grid of unit directions, poles emitted
// once. azimuth_offset rotates the grid about the z-axis.
struct SphereGrid {
    int polar_count = 64;
    int azimuth_count = 128;
    double azimuth_offset = 0.0;

    void validate() const;  // both counts >= 2
};

struct SphereSample {
    int polar_index = 0;
    int azimuth_index = 0;
    std::array<double, 3> direction{};
    double delta_variance = 0.0;
};

// The grid's direction list in (polar index, azimuth index) order, with
// delta_variance left at 0.
std::vector<SphereSample> sphere_directions(const SphereGrid& grid);

MomentSummary moments(const ProbabilityVector& pd);

// Δσ²(B) = |σ²(B) − σ²(B=0)|: runs the walk with the field and with ω = 0.
double variance_difference(const WalkConfig& cfg);

// T²(1 − |sin(ω − θ)|). Valid regime: T ≤ a, initial spin |+>, even T.
double closed_form_variance_x(int steps, double theta, double omega);

// One-step probabilities (P(x=+1), P(x=-1)) = (1 ± sin2ω sin2θ)/2
// for B along +z and initial spin |+>.
std::pair<double, double> first_step_probs(double theta, double omega);

// Δσ² for the field ω·n̂ over every grid direction, ordered by
// (polar index, azimuth index).
std::vector<SphereSample> sphere_scan(double omega, double theta, const SpinVector& spin,
                                      int steps, int half_width, const SphereGrid& grid);

}  // namespace dtqw
