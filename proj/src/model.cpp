#include "model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace siam {

namespace {

void require_half_filling(const SiamParams& p, const char* where) {
    if (!p.is_half_filled())
        throw std::invalid_argument(std::string(where) +
                                    " supports the half-filled model only (mu = U/2, eps = 0)");
}

// Pauli string with a single non-identity factor at 1-based qubit position q,
// preceded by the Jordan-Wigner Z string.
std::string jw_string(int q, char op) {
    std::string s(4, 'I');
    for (int k = 0; k < q - 1; ++k) s[k] = 'Z';
    s[q - 1] = op;
    return s;
}

}  // namespace

HamiltonianSum build_spin_hamiltonian(const SiamParams& p) {
    require_half_filling(p, "build_spin_hamiltonian");
    if (p.U < 0.0) throw std::invalid_argument("interaction U must be non-negative");
    HamiltonianSum h;
    h.n_qubits = 4;
    h.terms = {
        {p.U / 4.0, "ZIZI"},  // impurity up/down occupation coupling
        {p.V / 2.0, "XXII"},  // impurity-bath hopping, down spin
        {p.V / 2.0, "YYII"},
        {p.V / 2.0, "IIXX"},  // impurity-bath hopping, up spin
        {p.V / 2.0, "IIYY"},
    };
    return h;
}

std::pair<FermionOps, Mat> jordan_wigner(const SiamParams& p) {
    const cxd i(0.0, 1.0);
    FermionOps ops;
    for (int mode = 0; mode < 4; ++mode) {
        int q = mode + 1;
        Mat x = materialize(PauliTerm{1.0, jw_string(q, 'X')}, 4);
        Mat y = materialize(PauliTerm{1.0, jw_string(q, 'Y')}, 4);
        ops.c[mode] = 0.5 * (x + i * y);  // annihilates an occupied (bit 1) mode
        ops.cdag[mode] = ops.c[mode].adjoint();
    }
    ops.q1 = ops.c[0] + ops.cdag[0];
    ops.q2 = i * (ops.c[0] - ops.cdag[0]);

    // Modes (1dn, 2dn, 1up, 2up): impurity occupation is modes 0 and 2.
    auto n = [&](int mode) -> Mat { return ops.cdag[mode] * ops.c[mode]; };
    Mat h = p.U * (n(0) * n(2));
    h -= p.mu * (n(0) + n(2));
    h += p.eps * (n(1) + n(3));
    for (int spin : {0, 2}) {  // impurity mode 'spin', bath mode 'spin+1'
        h += p.V * (ops.cdag[spin] * ops.c[spin + 1] + ops.cdag[spin + 1] * ops.c[spin]);
    }
    return {std::move(ops), std::move(h)};
}

double bethe_dos(double x, const BetheLattice& lattice) {
    if (!(lattice.t_star > 0.0)) throw std::invalid_argument("bethe_dos needs t_star > 0");
    double band = 2.0 * lattice.t_star;
    if (std::abs(x) >= band) return 0.0;
    return std::sqrt(band * band - x * x) / (2.0 * M_PI * lattice.t_star * lattice.t_star);
}

std::vector<cxd> bare_g0_inv(const MatsubaraGrid& grid, const SiamParams& p) {
    const cxd i(0.0, 1.0);
    std::vector<double> w = grid.frequencies();
    std::vector<cxd> out(w.size());
    for (size_t n = 0; n < w.size(); ++n) {
        cxd denom = i * w[n] - p.eps;
        if (std::abs(denom) < 1e-300)
            throw std::invalid_argument("bare_g0_inv pole: i w_n coincides with eps");
        out[n] = i * w[n] + p.mu - p.V * p.V / denom;
    }
    return out;
}

std::vector<cxd> weiss_inv(const MatsubaraGrid& grid, const std::vector<cxd>& g, double mu) {
    const cxd i(0.0, 1.0);
    std::vector<double> w = grid.frequencies();
    if (g.size() != w.size())
        throw std::invalid_argument("weiss_inv: propagator length does not match the grid");
    std::vector<cxd> out(w.size());
    for (size_t n = 0; n < w.size(); ++n) out[n] = i * w[n] + mu - g[n];
    return out;
}

std::vector<cxd> self_energy(const std::vector<cxd>& g0_inv, const std::vector<cxd>& g_inv) {
    if (g0_inv.size() != g_inv.size())
        throw std::invalid_argument("self_energy: input vectors must have equal length");
    std::vector<cxd> out(g0_inv.size());
    for (size_t n = 0; n < out.size(); ++n) out[n] = g0_inv[n] - g_inv[n];
    return out;
}

}  // namespace siam
