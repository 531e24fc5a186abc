// walker_state.hpp
// State representation of a spin-1/2 walker on a finite 1D lattice:
// complex amplitudes over (spin ⊗ position) plus the position/spin marginals.

#pragma once

#include <complex>
#include <vector>

namespace dtqw {

using Complex = std::complex<double>;

enum class BoundaryMode { Bounded, Unbounded };

// Lattice sites span x ∈ [-half_width, half_width] (2a+1 sites). Unbounded
// walks are run on a finite array too; callers must pick half_width >= steps
// so no amplitude ever reaches the array edge.
struct LatticeSpec {
    int half_width = 0;
    BoundaryMode mode = BoundaryMode::Bounded;

    int site_count() const { return 2 * half_width + 1; }
    int index_of(int site) const { return site + half_width; }
    int site_at(int index) const { return index - half_width; }
    bool contains(int site) const { return site >= -half_width && site <= half_width; }

    void validate() const;  // half_width >= 0

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

// Normalized 2-component spin state a|0> + b|1>.
struct SpinVector {
    Complex amp0{1.0, 0.0};
    Complex amp1{0.0, 0.0};

    double norm() const;

    static SpinVector zero() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static SpinVector one() { return {{0.0, 0.0}, {1.0, 0.0}}; }
    static SpinVector plus();  // (|0> + |1>)/sqrt(2)
};

// Full quantum state: complex amplitude for every (spin, site) cell,
// stored spin-major so each spin row is contiguous.
class WalkerState {
public:
    WalkerState() = default;
    explicit WalkerState(LatticeSpec lattice);

    const LatticeSpec& lattice() const { return lattice_; }
    int half_width() const { return lattice_.half_width; }
    int site_count() const { return lattice_.site_count(); }

    Complex& at(int spin, int site) {
        return amps_[static_cast<size_t>(spin) * site_count() + lattice_.index_of(site)];
    }
    const Complex& at(int spin, int site) const {
        return amps_[static_cast<size_t>(spin) * site_count() + lattice_.index_of(site)];
    }

    Complex* row(int spin) { return amps_.data() + static_cast<size_t>(spin) * site_count(); }
    const Complex* row(int spin) const {
        return amps_.data() + static_cast<size_t>(spin) * site_count();
    }

    const std::vector<Complex>& amplitudes() const { return amps_; }
    std::vector<Complex>& amplitudes() { return amps_; }

    double norm() const;

    friend bool operator==(const WalkerState&, const WalkerState&) = default;

private:
    LatticeSpec lattice_;
    std::vector<Complex> amps_;  // [spin0 row | spin1 row]
};

// Probability distribution over sites (first_site = -a) or over the two spin
// outcomes (first_site = 0). Entries are clamped at 0 from below.
struct ProbabilityVector {
    int first_site = 0;
    std::vector<double> probs;

    double sum() const;
    int site_at(size_t index) const { return first_site + static_cast<int>(index); }
    double at_site(int site) const { return probs[static_cast<size_t>(site - first_site)]; }
};

// |s> ⊗ |x=0>. Rejects spin vectors whose norm deviates from 1 by more than 1e-9.
WalkerState new_state(const SpinVector& spin, const LatticeSpec& lattice);

// p(x) = sum_s |psi(s,x)|^2
ProbabilityVector position_marginal(const WalkerState& state);

// p(s) = sum_x |psi(s,x)|^2
ProbabilityVector spin_marginal(const WalkerState& state);

// <phi|psi>
Complex inner_product(const WalkerState& a, const WalkerState& b);

}  // namespace dtqw
