// The two-site single-impurity Anderson model in its fermionic and spin
// pictures, the Jordan-Wigner dictionary between them, and the Bethe-lattice
// ingredients of the self-consistency condition (noninteracting propagator,
// Weiss field, self-energy).

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "grids.hpp"
#include "qsim.hpp"

namespace siam {

// Physical parameters in units of the Bethe hopping scale t*. Half filling
// pins mu = U/2 and eps = 0, which is the regime the spin form is derived in.
struct SiamParams {
    double U = 1.0;
    double mu = 0.5;
    double eps = 0.0;
    double V = 0.5;

    static SiamParams half_filling(double U, double V) { return {U, U / 2.0, 0.0, V}; }

    bool is_half_filled(double tol = 1e-12) const {
        return std::abs(mu - U / 2.0) <= tol && std::abs(eps) <= tol;
    }
};

// Jordan-Wigner images of the four fermionic modes, qubit order
// (1dn, 2dn, 1up, 2up), plus the impurity quadratures q1 = c1 + c1^dag and
// q2 = i(c1 - c1^dag), which materialize to X on qubit 1 and -Y on qubit 1.
struct FermionOps {
    std::array<Mat, 4> c;
    std::array<Mat, 4> cdag;
    Mat q1, q2;
};

struct BetheLattice {
    double t_star = 1.0;
};

// (U/4) Z1 Z3 + (V/2)(X1 X2 + Y1 Y2 + X3 X4 + Y3 Y4) on 4 qubits. Requires
// half-filled params because that is where this form is valid.
HamiltonianSum build_spin_hamiltonian(const SiamParams& p);

// Mode operators and the fermionic Hamiltonian matrix. The fermionic matrix
// equals the spin Hamiltonian minus (U/4) I; the constant shift is kept
// explicit so ground-state energies stay comparable between pictures.
std::pair<FermionOps, Mat> jordan_wigner(const SiamParams& p);

// Semicircular density of states sqrt(4 t*^2 - x^2) / (2 pi t*^2), zero
// outside the band.
double bethe_dos(double x, const BetheLattice& lattice);

// G0^-1(i w_n) = i w_n + mu - V^2 / (i w_n - eps), elementwise on the grid.
std::vector<cxd> bare_g0_inv(const MatsubaraGrid& grid, const SiamParams& p);

// Weiss field inverse from the measured propagator: i w_n + mu - G(i w_n).
std::vector<cxd> weiss_inv(const MatsubaraGrid& grid, const std::vector<cxd>& g, double mu);

// Sigma(i w_n) = g0_inv - g_inv, elementwise.
std::vector<cxd> self_energy(const std::vector<cxd>& g0_inv, const std::vector<cxd>& g_inv);

}  // namespace siam
