#include "qsim.hpp"

#include <cmath>
#include <stdexcept>

namespace siam {

namespace {

const cxd kI(0.0, 1.0);

Mat single_qubit(char label) {
    Mat m(2, 2);
    switch (label) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -kI, kI, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli factor '") + label +
                                        "' (expected I, X, Y or Z)");
    }
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void check_hermitian(const Mat& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("Hamiltonian matrix must be square");
    double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-10)
        throw std::invalid_argument("Hamiltonian must be Hermitian (max |H - H^dag| = " +
                                    std::to_string(dev) + ")");
}

}  // namespace

QuantumState QuantumState::basis(int n_qubits, long index) {
    if (n_qubits < 1)
        throw std::invalid_argument("basis state needs at least one qubit");
    long dim = 1L << n_qubits;
    if (index < 0 || index >= dim)
        throw std::invalid_argument("basis index out of range for register size");
    QuantumState s;
    s.n_qubits = n_qubits;
    s.amplitudes = Vec::Zero(dim);
    s.amplitudes(index) = 1.0;
    return s;
}

Mat materialize(const PauliTerm& term, int n_qubits) {
    if (static_cast<int>(term.factors.size()) != n_qubits)
        throw std::invalid_argument("PauliTerm has " + std::to_string(term.factors.size()) +
                                    " factors but the register has " + std::to_string(n_qubits) +
                                    " qubits");
    Mat m = Mat::Identity(1, 1);
    for (char label : term.factors) m = kron(m, single_qubit(label));  // qubit 1 leftmost
    return term.coefficient * m;
}

Mat materialize(const HamiltonianSum& h) {
    long dim = 1L << h.n_qubits;
    Mat m = Mat::Zero(dim, dim);
    for (const PauliTerm& term : h.terms) m += materialize(term, h.n_qubits);
    return m;
}

cxd expectation(const QuantumState& state, const Mat& op) {
    if (op.rows() != state.amplitudes.size() || op.cols() != state.amplitudes.size())
        throw std::invalid_argument("operator dimension does not match the state");
    return state.amplitudes.dot(op * state.amplitudes);  // dot conjugates the left side
}

cxd expectation(const QuantumState& state, const HamiltonianSum& h) {
    if (h.n_qubits != state.n_qubits)
        throw std::invalid_argument("operator qubit count does not match the state");
    return expectation(state, materialize(h));
}

cxd expectation(const QuantumState& state, const PauliTerm& term) {
    return expectation(state, materialize(term, state.n_qubits));
}

EvolutionCache::EvolutionCache(const Mat& h) {
    check_hermitian(h);
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    energies = solver.eigenvalues();
    vectors = solver.eigenvectors();
}

Vec EvolutionCache::apply(double t, const Vec& amplitudes) const {
    if (amplitudes.size() != vectors.rows())
        throw std::invalid_argument("state dimension does not match the Hamiltonian");
    Vec modal = vectors.adjoint() * amplitudes;
    for (Eigen::Index m = 0; m < modal.size(); ++m)
        modal(m) *= std::exp(cxd(0.0, -energies(m) * t));
    return vectors * modal;
}

QuantumState evolve_exact(const Mat& h, double t, const QuantumState& state) {
    EvolutionCache cache(h);
    QuantumState out = state;
    out.amplitudes = cache.apply(t, state.amplitudes);
    return out;
}

QuantumState evolve_exact(const HamiltonianSum& h, double t, const QuantumState& state) {
    if (h.n_qubits != state.n_qubits)
        throw std::invalid_argument("Hamiltonian qubit count does not match the state");
    return evolve_exact(materialize(h), t, state);
}

Mat two_level_rotation(int dim, int i, int j, double theta, RotationAxis axis) {
    if (dim < 2) throw std::invalid_argument("two_level_rotation needs dim >= 2");
    if (i < 0 || i >= dim || j < 0 || j >= dim)
        throw std::invalid_argument("two_level_rotation indices out of range");
    if (i == j)
        throw std::invalid_argument("two_level_rotation targets must be distinct levels");
    double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Mat r = Mat::Identity(dim, dim);
    if (axis == RotationAxis::y_like) {
        r(i, i) = c;
        r(i, j) = -s;
        r(j, i) = s;
        r(j, j) = c;
    } else {
        r(i, i) = c;
        r(i, j) = -kI * s;
        r(j, i) = -kI * s;
        r(j, j) = c;
    }
    return r;
}

}  // namespace siam
