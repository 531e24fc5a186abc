#include "dtqw/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtqw {

namespace {

constexpr Complex kI{0.0, 1.0};

// cos(wt) I + i (sigma.n) sin(wt), with sigma.n =
// [[nz, nx - i ny], [nx + i ny, -nz]].
CoinMatrix field_unitary_unchecked(double omega, const std::array<double, 3>& n, double t) {
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    return {Complex{c, n[2] * s}, s * Complex{n[1], n[0]},
            s * Complex{-n[1], n[0]}, Complex{c, -n[2] * s}};
}

// d/domega of field_unitary at fixed t: t * (-sin(wt) I + i (sigma.n) cos(wt)).
CoinMatrix field_unitary_domega(const FieldSpec& field, double t) {
    const double c = t * std::cos(field.omega * t);
    const double s = t * std::sin(field.omega * t);
    const auto& n = field.direction;
    return {Complex{-s, n[2] * c}, c * Complex{n[1], n[0]},
            c * Complex{-n[1], n[0]}, Complex{-s, -n[2] * c}};
}

}  // namespace

CoinMatrix CoinMatrix::operator*(const CoinMatrix& rhs) const {
    return {m00 * rhs.m00 + m01 * rhs.m10, m00 * rhs.m01 + m01 * rhs.m11,
            m10 * rhs.m00 + m11 * rhs.m10, m10 * rhs.m01 + m11 * rhs.m11};
}

double CoinMatrix::unitarity_error() const {
    // M†M entries
    const Complex g00 = std::conj(m00) * m00 + std::conj(m10) * m10;
    const Complex g01 = std::conj(m00) * m01 + std::conj(m10) * m11;
    const Complex g10 = std::conj(m01) * m00 + std::conj(m11) * m10;
    const Complex g11 = std::conj(m01) * m01 + std::conj(m11) * m11;
    return std::max({std::abs(g00 - 1.0), std::abs(g01), std::abs(g10), std::abs(g11 - 1.0)});
}

void FieldSpec::validate(double tol) const {
    const auto& n = direction;
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(len - 1.0) > tol) {
        throw std::invalid_argument("FieldSpec: direction must be a unit vector");
    }
}

CoinMatrix general_coin(double tau, double xi, double zeta, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex phase = std::exp(kI * tau);
    return {phase * std::exp(kI * xi) * c, phase * std::exp(kI * zeta) * s,
            -phase * std::exp(-kI * zeta) * s, phase * std::exp(-kI * xi) * c};
}

CoinMatrix coin(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {Complex{c, 0.0}, Complex{0.0, -s}, Complex{0.0, -s}, Complex{c, 0.0}};
}

CoinMatrix field_unitary(const FieldSpec& field, double t) {
    field.validate();
    return field_unitary_unchecked(field.omega, field.direction, t);
}

CoinMatrix effective_coin(double theta, const FieldSpec& field) {
    return coin(theta) * field_unitary(field, 1.0);
}

CoinMatrix effective_coin_domega(double theta, const FieldSpec& field) {
    field.validate();
    return coin(theta) * field_unitary_domega(field, 1.0);
}

namespace detail {

void apply_coin_inplace(WalkerState& state, const CoinMatrix& c) {
    const int n = state.site_count();
    Complex* up = state.row(0);
    Complex* down = state.row(1);
    for (int i = 0; i < n; ++i) {
        const Complex a0 = up[i];
        const Complex a1 = down[i];
        up[i] = c.m00 * a0 + c.m01 * a1;
        down[i] = c.m10 * a0 + c.m11 * a1;
    }
}

void apply_shift_inplace(WalkerState& state) {
    const int n = state.site_count();
    Complex* up = state.row(0);
    Complex* down = state.row(1);
    const Complex edge_left = up[0];        // spin-0 at -a
    const Complex edge_right = down[n - 1];  // spin-1 at +a

    if (state.lattice().mode == BoundaryMode::Unbounded &&
        (edge_left != Complex{} || edge_right != Complex{})) {
        throw std::runtime_error(
            "apply_shift: amplitude reached the array edge of an unbounded walk; "
            "allocate half_width >= steps");
    }

    // spin-0 moves left, spin-1 moves right
    for (int i = 0; i + 1 < n; ++i) up[i] = up[i + 1];
    up[n - 1] = Complex{};
    for (int i = n - 1; i > 0; --i) down[i] = down[i - 1];
    down[0] = Complex{};

    if (state.lattice().mode == BoundaryMode::Bounded) {
        // edge reflection with spin flip
        down[0] += edge_left;
        up[n - 1] += edge_right;
    }
}

}  // namespace detail

WalkerState apply_shift(const WalkerState& state) {
    WalkerState out = state;
    detail::apply_shift_inplace(out);
    return out;
}

}  // namespace dtqw
