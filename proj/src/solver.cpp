#include "solver.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace siam {

namespace {

const cxd kI(0.0, 1.0);
constexpr int kDim = 16;  // 4-qubit system register

// Bit of 1-based qubit q inside a 4-qubit index (qubit 1 most significant).
int qubit_mask(int q) { return 1 << (4 - q); }

// e^{-i theta Za Zb}: diagonal phases keyed on whether the two bits agree
// (Z eigenvalue +1 on bit 0).
void apply_zz(Vec& v, int qa, int qb, double theta) {
    int ma = qubit_mask(qa), mb = qubit_mask(qb);
    cxd same = std::exp(-kI * theta), diff = std::exp(kI * theta);
    for (int idx = 0; idx < kDim; ++idx) {
        bool equal = ((idx & ma) != 0) == ((idx & mb) != 0);
        v(idx) *= equal ? same : diff;
    }
}

// e^{-i theta Xa Xb}: mixes each index with its double-bit-flip partner.
void apply_xx(Vec& v, int qa, int qb, double theta) {
    int m = qubit_mask(qa) | qubit_mask(qb);
    double c = std::cos(theta), s = std::sin(theta);
    for (int idx = 0; idx < kDim; ++idx) {
        int partner = idx ^ m;
        if (idx > partner) continue;
        cxd u = v(idx), w = v(partner);
        v(idx) = c * u - kI * s * w;
        v(partner) = c * w - kI * s * u;
    }
}

// e^{-i theta Ya Yb}: like XX but the pair with equal bits picks up a sign.
void apply_yy(Vec& v, int qa, int qb, double theta) {
    int ma = qubit_mask(qa), mb = qubit_mask(qb);
    int m = ma | mb;
    double c = std::cos(theta), s = std::sin(theta);
    for (int idx = 0; idx < kDim; ++idx) {
        int partner = idx ^ m;
        if (idx > partner) continue;
        bool equal = ((idx & ma) != 0) == ((idx & mb) != 0);
        double sigma = equal ? -1.0 : 1.0;
        cxd u = v(idx), w = v(partner);
        v(idx) = c * u - kI * s * sigma * w;
        v(partner) = c * w - kI * s * sigma * u;
    }
}

// One first-order segment. The factor product reads left to right as
// ZZ, X1X2, Y1Y2, X3X4, Y3Y4, so the rightmost factor is applied first.
// The inverse applies negated angles in reversed order.
void apply_trotter_segment(Vec& v, double theta1, double theta2, bool inverse) {
    if (!inverse) {
        apply_yy(v, 3, 4, theta2);
        apply_xx(v, 3, 4, theta2);
        apply_yy(v, 1, 2, theta2);
        apply_xx(v, 1, 2, theta2);
        apply_zz(v, 1, 3, theta1);
    } else {
        apply_zz(v, 1, 3, -theta1);
        apply_xx(v, 1, 2, -theta2);
        apply_yy(v, 1, 2, -theta2);
        apply_xx(v, 3, 4, -theta2);
        apply_yy(v, 3, 4, -theta2);
    }
}

void trotter_apply(Vec& v, const TrotterPlan& plan, bool inverse) {
    for (int k = 0; k < plan.n; ++k) apply_trotter_segment(v, plan.theta1, plan.theta2, inverse);
}

// X on qubit 1: swap the halves of the register.
void apply_x1(Vec& v) {
    int m = qubit_mask(1);
    for (int idx = 0; idx < kDim; ++idx) {
        int partner = idx ^ m;
        if (idx > partner) continue;
        std::swap(v(idx), v(partner));
    }
}

// -Y on qubit 1, the Jordan-Wigner image of the q2 impurity quadrature.
void apply_minus_y1(Vec& v) {
    int m = qubit_mask(1);
    for (int idx = 0; idx < kDim; ++idx) {
        if ((idx & m) != 0) continue;
        cxd lo = v(idx), hi = v(idx | m);
        v(idx) = kI * hi;
        v(idx | m) = -kI * lo;
    }
}

// Evolution in the requested mode; the inverse flag yields the exact inverse
// of the forward map in both modes (for Trotter this is the reversed product,
// not the product at -t).
struct ModeEvolver {
    EvolutionMode mode;
    int trotter_n;
    SiamParams params;
    std::optional<EvolutionCache> cache;

    static ModeEvolver make(const SiamParams& p, EvolutionMode mode, int trotter_n) {
        ModeEvolver ev{mode, trotter_n, p, std::nullopt};
        if (mode == EvolutionMode::exact)
            ev.cache.emplace(materialize(build_spin_hamiltonian(p)));
        else if (trotter_n < 1)
            throw std::invalid_argument("trotter mode needs a segment count n >= 1");
        return ev;
    }

    void evolve(Vec& v, double t, bool inverse) const {
        if (mode == EvolutionMode::exact) {
            v = cache->apply(inverse ? -t : t, v);
        } else {
            trotter_apply(v, TrotterPlan::make(params, t, trotter_n), inverse);
        }
    }
};

void check_system_state(const QuantumState& ground) {
    if (ground.n_qubits != 4 || ground.amplitudes.size() != kDim)
        throw std::invalid_argument("correlators need a 4-qubit (16-amplitude) ground state");
}

}  // namespace

TrotterPlan TrotterPlan::make(const SiamParams& p, double t, int n) {
    if (n < 1) throw std::invalid_argument("trotter segment count must be >= 1");
    return {n, p.U * t / (4.0 * n), p.V * t / (2.0 * n)};
}

std::pair<double, QuantumState> ground_state_ed(const HamiltonianSum& h) {
    Mat m = materialize(h);
    Eigen::SelfAdjointEigenSolver<Mat> solver(m);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    const auto& e = solver.eigenvalues();
    if (e.size() < 2 || e(1) - e(0) <= 1e-9)
        throw std::runtime_error("degenerate ground state (gap <= 1e-9); V = 0 is not supported");

    QuantumState gs;
    gs.n_qubits = h.n_qubits;
    gs.amplitudes = solver.eigenvectors().col(0);

    // Fix the global phase: largest-magnitude amplitude real positive, so
    // correlators are reproducible run to run.
    Eigen::Index imax = 0;
    gs.amplitudes.cwiseAbs().maxCoeff(&imax);
    cxd a = gs.amplitudes(imax);
    gs.amplitudes *= std::abs(a) / a;
    return {e(0), gs};
}

QuantumState prepare_psi0() {
    QuantumState s;
    s.n_qubits = 4;
    s.amplitudes = Vec::Zero(kDim);
    s.amplitudes(0b0101) = 0.5;
    s.amplitudes(0b0110) = -0.5;
    s.amplitudes(0b1001) = -0.5;
    s.amplitudes(0b1010) = 0.5;
    return s;
}

QuantumState prepare_psi0_circuit() {
    QuantumState s = QuantumState::basis(4, 0);

    // Step 1: put qubits 2 and 4 into (|0> + |1>) / sqrt(2).
    HamiltonianSum y2{4, {{1.0, "IYII"}}};
    HamiltonianSum y4{4, {{1.0, "IIIY"}}};
    s = evolve_exact(y2, M_PI / 4.0, s);
    s = evolve_exact(y4, M_PI / 4.0, s);

    // Step 2: flip qubit 1 where qubit 2 is 0, and qubit 3 where qubit 4 is 0
    // (a basis permutation).
    Vec permuted = Vec::Zero(kDim);
    for (int idx = 0; idx < kDim; ++idx) {
        int target = idx;
        if ((idx & qubit_mask(2)) == 0) target ^= qubit_mask(1);
        if ((idx & qubit_mask(4)) == 0) target ^= qubit_mask(3);
        permuted(target) = s.amplitudes(idx);
    }
    s.amplitudes = permuted;

    // Step 3: Z1 Z3 phase.
    for (int idx = 0; idx < kDim; ++idx) {
        bool equal = ((idx & qubit_mask(1)) != 0) == ((idx & qubit_mask(3)) != 0);
        if (!equal) s.amplitudes(idx) = -s.amplitudes(idx);
    }
    return s;
}

std::pair<QuantumState, std::vector<double>> asp_evolve(const SiamParams& p,
                                                        const AspSchedule& schedule) {
    if (!(p.V > 0.0)) throw std::invalid_argument("asp_evolve needs V > 0 (gapped ramp)");
    if (!(schedule.T > 0.0) || schedule.M < 1)
        throw std::invalid_argument("asp_evolve needs T > 0 and M >= 1");

    double dT = schedule.T / schedule.M;
    QuantumState psi = prepare_psi0();
    std::vector<double> fidelity;
    fidelity.reserve(schedule.M + 1);

    for (int m = 0; m <= schedule.M; ++m) {
        double s = static_cast<double>(m) / schedule.M;
        if (m > 0) {
            // One first-order segment of H_ad(s): U scaled by s, hopping fixed.
            double theta1 = s * p.U * dT / 4.0;
            double theta2 = p.V * dT / 2.0;
            apply_trotter_segment(psi.amplitudes, theta1, theta2, false);
        }
        auto [e0, gs] = ground_state_ed(build_spin_hamiltonian(SiamParams::half_filling(s * p.U, p.V)));
        (void)e0;
        fidelity.push_back(std::norm(gs.amplitudes.dot(psi.amplitudes)));
    }
    return {std::move(psi), std::move(fidelity)};
}

QuantumState trotter_evolve(const SiamParams& p, double t, int n, const QuantumState& state) {
    check_system_state(state);
    QuantumState out = state;
    trotter_apply(out.amplitudes, TrotterPlan::make(p, t, n), false);
    return out;
}

cxd scattering_correlation(const CorrelatorRequest& req, const QuantumState& ground) {
    check_system_state(ground);
    ModeEvolver ev = ModeEvolver::make(req.params, req.mode, req.trotter_n);

    // 5-qubit register: ancilla prepended (most significant bit) in |+>, so
    // the state splits into an ancilla-0 half and an ancilla-1 half. Every
    // gate of the u1^dag u2 u1 u2 block is ancilla-controlled, so the 0-half
    // stays frozen at ground/sqrt(2) while the 1-half accumulates the block.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Vec top = ground.amplitudes * inv_sqrt2;
    Vec bottom = ground.amplitudes * inv_sqrt2;

    // Rightmost factor first: u2 carries X1 for O1 and -Y1 (the q2
    // quadrature) for O2; the second u2 application is always X1.
    if (req.which == CorrelatorRequest::Which::O1)
        apply_x1(bottom);
    else
        apply_minus_y1(bottom);
    ev.evolve(bottom, req.t, false);
    apply_x1(bottom);
    ev.evolve(bottom, req.t, true);

    // Transverse ancilla readout: <sigma_x> = 2 Re <top|bottom>,
    // <sigma_y> = 2 Im <top|bottom>; the correlator is <sigma_x> + i <sigma_y>.
    cxd z = top.dot(bottom);
    return cxd(2.0 * z.real(), 2.0 * z.imag());
}

cxd direct_correlation(const CorrelatorRequest& req, const QuantumState& ground) {
    check_system_state(ground);
    ModeEvolver ev = ModeEvolver::make(req.params, req.mode, req.trotter_n);

    Vec b = ground.amplitudes;
    if (req.which == CorrelatorRequest::Which::O1)
        apply_x1(b);
    else
        apply_minus_y1(b);
    ev.evolve(b, req.t, false);
    apply_x1(b);
    ev.evolve(b, req.t, true);
    return ground.amplitudes.dot(b);
}

CorrelatorSeries correlator_series(const SiamParams& p, const TimeGrid& grid, EvolutionMode mode,
                                   int trotter_n, const QuantumState& ground) {
    check_system_state(ground);
    grid.validate();
    const int n_pts = grid.n_points();
    CorrelatorSeries out;
    out.o1.resize(n_pts);
    out.o2.resize(n_pts);

    Vec a1 = ground.amplitudes;
    apply_x1(a1);
    Vec a2 = ground.amplitudes;
    apply_minus_y1(a2);

    if (mode == EvolutionMode::exact) {
        // Same circuit value, factored through one eigendecomposition:
        // o(t) = <psi_m conj(ph_m) | Xt | ph ∘ a>, with the per-time phases
        // ph_m = e^{-i E_m t} advanced by one multiplication per grid step.
        EvolutionCache cache(materialize(build_spin_hamiltonian(p)));
        Mat x1 = materialize(PauliTerm{1.0, "XIII"}, 4);
        Mat xt = cache.vectors.adjoint() * x1 * cache.vectors;
        Vec psit = cache.vectors.adjoint() * ground.amplitudes;
        Vec at1 = cache.vectors.adjoint() * a1;
        Vec at2 = cache.vectors.adjoint() * a2;

        Vec ph(kDim), step(kDim);
        for (int m = 0; m < kDim; ++m) {
            ph(m) = std::exp(cxd(0.0, -cache.energies(m) * grid.t_start));
            step(m) = std::exp(cxd(0.0, -cache.energies(m) * grid.dt));
        }
        for (int j = 0; j < n_pts; ++j) {
            Vec left = psit.cwiseProduct(ph);
            out.o1[j] = left.dot(xt * ph.cwiseProduct(at1).eval());
            out.o2[j] = left.dot(xt * ph.cwiseProduct(at2).eval());
            ph = ph.cwiseProduct(step);
        }
    } else {
        if (trotter_n < 1) throw std::invalid_argument("trotter mode needs a segment count n >= 1");
        for (int j = 0; j < n_pts; ++j) {
            TrotterPlan plan = TrotterPlan::make(p, grid.t(j), trotter_n);
            Vec b1 = a1, b2 = a2;
            trotter_apply(b1, plan, false);
            apply_x1(b1);
            trotter_apply(b1, plan, true);
            trotter_apply(b2, plan, false);
            apply_x1(b2);
            trotter_apply(b2, plan, true);
            out.o1[j] = ground.amplitudes.dot(b1);
            out.o2[j] = ground.amplitudes.dot(b2);
        }
    }
    return out;
}

}  // namespace siam
