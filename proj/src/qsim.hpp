// Dense, exact linear-algebra core for small (<= 6 qubit) quantum registers:
// Pauli-term operator construction, expectation values, exact time evolution
// through Hermitian eigendecomposition, and two-level (line-selective)
// rotations.
//
// Bit ordering convention used everywhere: qubit 1 is the most significant
// bit, so the basis ket |q1 q2 ... qn> lives at index sum_j q_j 2^(n-j) and
// ket strings like |0101> read directly as binary numbers.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace siam {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

struct QuantumState {
    int n_qubits = 0;
    Vec amplitudes;

    // |index> as a computational basis state.
    static QuantumState basis(int n_qubits, long index);
};

// Density matrix, possibly a traceless "deviation" matrix (trace 0 allowed).
struct DensityOperator {
    int n_qubits = 0;
    Mat matrix;
};

// One weighted tensor product of single-qubit operators, e.g. 0.25 * "ZIZI".
// factors holds one of {I, X, Y, Z} per qubit, qubit 1 first.
struct PauliTerm {
    double coefficient = 1.0;
    std::string factors;
};

struct HamiltonianSum {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;
};

Mat materialize(const PauliTerm& term, int n_qubits);
Mat materialize(const HamiltonianSum& h);

cxd expectation(const QuantumState& state, const Mat& op);
cxd expectation(const QuantumState& state, const HamiltonianSum& h);
cxd expectation(const QuantumState& state, const PauliTerm& term);

// e^{-iHt}|psi> via eigendecomposition. Exact at these dimensions; this is
// the oracle every Trotterized evolution is validated against.
QuantumState evolve_exact(const HamiltonianSum& h, double t, const QuantumState& state);
QuantumState evolve_exact(const Mat& h, double t, const QuantumState& state);

// Eigendecomposition of a fixed Hamiltonian, reused across a whole series of
// evolution times (one solve, two matrix-vector products per time).
struct EvolutionCache {
    Eigen::VectorXd energies;
    Mat vectors;  // columns are eigenvectors

    explicit EvolutionCache(const Mat& h);
    Vec apply(double t, const Vec& amplitudes) const;
};

enum class RotationAxis { y_like, x_like };

// Unitary equal to the identity except for a 2x2 rotation block on rows/cols
// {i, j}. Conjugating a diagonal density matrix exchanges sin^2(theta/2) of
// the population between the two levels.
Mat two_level_rotation(int dim, int i, int j, double theta, RotationAxis axis);

}  // namespace siam
