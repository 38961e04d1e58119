#include "pps.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace siam {

namespace {

int bit_of(int index, int qubit, int n) { return (index >> (n - 1 - qubit)) & 1; }

void check_diagonal(const DensityOperator& rho, const char* where) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < rho.matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.matrix.cols(); ++j)
            if (i != j) off = std::max(off, std::abs(rho.matrix(i, j)));
    if (off > 1e-12)
        throw std::invalid_argument(std::string(where) + " needs a diagonal density matrix");
}

void check_layout(const DensityOperator& rho, const SpinLayout& layout, const char* where) {
    if (rho.matrix.rows() != layout.dim() || rho.matrix.cols() != layout.dim())
        throw std::invalid_argument(std::string(where) +
                                    ": density matrix does not match the layout dimension");
}

DensityOperator conjugate(const DensityOperator& rho, const Mat& u) {
    return {rho.n_qubits, u * rho.matrix * u.adjoint()};
}

}  // namespace

SpinLayout SpinLayout::from_label(const std::string& label, double r) {
    if (label.size() < 2) throw std::invalid_argument("spin layout needs at least 2 qubits");
    if (!(r > 0.0)) throw std::invalid_argument("spin layout weight ratio must be positive");
    const std::map<char, double> species{{'A', 2.0}, {'B', 1.0}, {'H', 1.0}, {'F', r}};
    double reference = 0.0;
    SpinLayout layout;
    layout.label = label;
    layout.weights.reserve(label.size());
    for (char ch : label) {
        auto it = species.find(ch);
        if (it == species.end())
            throw std::invalid_argument(std::string("unknown spin species '") + ch +
                                        "' in layout " + label);
        layout.weights.push_back(it->second);
    }
    reference = layout.weights.back();  // weights are relative to the last spin's species
    for (double& w : layout.weights) w /= reference;
    return layout;
}

DensityOperator thermal_deviation(const SpinLayout& layout) {
    int n = layout.n_qubits();
    int dim = layout.dim();
    DensityOperator rho{n, Mat::Zero(dim, dim)};
    for (int s = 0; s < dim; ++s) {
        double p = 0.0;
        for (int q = 0; q < n; ++q)
            p += layout.weights[q] * (bit_of(s, q, n) == 0 ? 1.0 : -1.0);
        rho.matrix(s, s) = p;
    }
    return rho;
}

DensityOperator sp1_deplete(const DensityOperator& rho, const SpinLayout& layout) {
    check_layout(rho, layout, "sp1_deplete");
    check_diagonal(rho, "sp1_deplete");
    int dim = layout.dim();
    DensityOperator out = rho;
    for (int s = 1; s < dim / 2; ++s) {  // s=0 is the excluded (all-zeros, all-ones) pair
        int sbar = (dim - 1) ^ s;
        Mat rot = two_level_rotation(dim, s, sbar, M_PI / 2.0, RotationAxis::y_like);
        out = conjugate(out, rot);
    }
    return out;
}

double weighted_order(int i, int j, const SpinLayout& layout) {
    int n = layout.n_qubits();
    double p = 0.0;
    for (int q = 0; q < n; ++q) {
        double mi = bit_of(i, q, n) == 0 ? 0.5 : -0.5;
        double mj = bit_of(j, q, n) == 0 ? 0.5 : -0.5;
        p += layout.weights[q] * (mi - mj);
    }
    return p;
}

DensityOperator gradient_dephase(const DensityOperator& rho, const SpinLayout& layout) {
    check_layout(rho, layout, "gradient_dephase");
    DensityOperator out = rho;
    for (Eigen::Index i = 0; i < out.matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < out.matrix.cols(); ++j)
            if (i != j && std::abs(weighted_order(static_cast<int>(i), static_cast<int>(j),
                                                  layout)) > 1e-12)
                out.matrix(i, j) = 0.0;
    return out;
}

DensityOperator sp2_redistribute(const DensityOperator& rho, const SpinLayout& layout) {
    check_layout(rho, layout, "sp2_redistribute");
    check_diagonal(rho, "sp2_redistribute");
    int dim = layout.dim();
    int ones = dim - 1;
    DensityOperator out = rho;
    // Targets are the states other than all-zeros and all-ones; angles step
    // k = dim-1 down to 2 so each target ends with exactly 1/(dim-1) of the
    // original all-ones population.
    int k = dim - 1;
    for (int target = 1; target < ones; ++target, --k) {
        double theta = 2.0 * std::asin(std::sqrt(1.0 / k));
        Mat rot = two_level_rotation(dim, target, ones, theta, RotationAxis::y_like);
        out = conjugate(out, rot);
        // Each selective transfer is accompanied by a gradient pulse. The
        // rotation leaves a (target, all-ones) coherence whose weighted order
        // is a positive weight sum, so the gradient removes exactly it; left
        // in place it would chain through later rotations into order-zero
        // positions the final gradient cannot touch.
        out = gradient_dephase(out, layout);
    }
    return out;
}

PpsReport verify_pps(const DensityOperator& rho) {
    PpsReport report;
    const Mat& m = rho.matrix;
    int dim = static_cast<int>(m.rows());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (i != j) report.max_offdiag = std::max(report.max_offdiag, std::abs(m(i, j)));

    double lo = m(1, 1).real(), hi = m(1, 1).real(), sum = 0.0;
    for (int i = 1; i < dim; ++i) {
        double p = m(i, i).real();
        lo = std::min(lo, p);
        hi = std::max(hi, p);
        sum += p;
    }
    report.background = sum / (dim - 1);
    report.signal = m(0, 0).real() - report.background;
    report.is_pps = report.max_offdiag <= 1e-12 && (hi - lo) <= 1e-12;
    return report;
}

DensityOperator run_pps_sequence(const SpinLayout& layout) {
    DensityOperator rho = thermal_deviation(layout);
    rho = sp1_deplete(rho, layout);
    rho = gradient_dephase(rho, layout);
    rho = sp2_redistribute(rho, layout);
    rho = gradient_dephase(rho, layout);
    return rho;
}

}  // namespace siam
