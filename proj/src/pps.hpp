// Density-matrix simulation of line-selective pseudo-pure-state preparation:
// thermal deviation state, SP1 symmetric-pair depletion, gradient dephasing
// keyed on weighted coherence order, SP2 redistribution of the all-ones
// population, and verification of the resulting PPS form.

#pragma once

#include <string>
#include <vector>

#include "qsim.hpp"

namespace siam {

// Spin register with per-qubit gyromagnetic weights relative to the species
// of the last qubit (reference weight 1). Known species letters: A = 2,
// B = 1, H = 1, F = r (the heteronuclear ratio, configurable).
struct SpinLayout {
    std::string label;
    std::vector<double> weights;

    int n_qubits() const { return static_cast<int>(weights.size()); }
    int dim() const { return 1 << n_qubits(); }

    static SpinLayout from_label(const std::string& label, double r = 0.9407);
};

// Diagonal deviation matrix sum_k w_k sigma_z^k (trace 0). The population of
// a basis state is the signed weight sum with +w_k for bit 0.
DensityOperator thermal_deviation(const SpinLayout& layout);

// pi/2 two-level rotation between every bit-complement pair (s, s_bar)
// except (all-zeros, all-ones): pair populations equalize to their mean and
// a pair coherence proportional to their difference appears.
DensityOperator sp1_deplete(const DensityOperator& rho, const SpinLayout& layout);

// Weighted coherence order p(i, j) = sum_k w_k (m_k(i) - m_k(j)), m = +1/2
// for bit 0.
double weighted_order(int i, int j, const SpinLayout& layout);

// Ideal gradient pulse: zeroes every element with weighted order != 0,
// leaving the diagonal (and any accidental order-zero coherences) untouched.
DensityOperator gradient_dephase(const DensityOperator& rho, const SpinLayout& layout);

// Rotations from the all-ones state to each other state except all-zeros,
// with angles 2 asin(sqrt(1/k)) for k = 2^n - 1 down to 2, each followed by
// a gradient pulse that dephases the coherence the transfer created;
// afterwards every state except all-zeros holds exactly 1/(2^n - 1) of the
// original all-ones population and the state is diagonal again.
DensityOperator sp2_redistribute(const DensityOperator& rho, const SpinLayout& layout);

struct PpsReport {
    bool is_pps = false;
    double background = 0.0;  // common population of the non-signal states
    double signal = 0.0;      // P(all-zeros) - background
    double max_offdiag = 0.0;
};

// is_pps holds iff all off-diagonals are <= 1e-12 and all diagonal entries
// except all-zeros agree within 1e-12.
PpsReport verify_pps(const DensityOperator& rho);

// thermal -> SP1 -> gradient -> SP2 -> gradient.
DensityOperator run_pps_sequence(const SpinLayout& layout);

}  // namespace siam
