// Green's-function stage: assemble particle/hole series from the measured
// correlators, transform to real frequencies and to the Matsubara axis, take
// spectral densities, and provide the independent Lehmann pole-sum reference
// that every quadrature path is validated against.

#pragma once

#include <vector>

#include "grids.hpp"
#include "model.hpp"

namespace siam {

struct GreensSeries {
    TimeGrid grid;
    std::vector<cxd> gp;  // particle Green's function G^p(t_j)
    std::vector<cxd> gh;  // hole Green's function G^h(t_j)
};

enum class SpectrumAxis { real_frequency, matsubara };

struct GreensSpectrum {
    SpectrumAxis axis = SpectrumAxis::real_frequency;
    std::vector<double> frequencies;  // omega, or omega_n on the Matsubara axis
    std::vector<cxd> values;
    double eta = 0.0;
    // Set when the time window is too short for the requested Matsubara
    // decay, i.e. exp(-(eta + omega_0) t_max) >= 1e-8; carries that bound.
    bool truncation_warning = false;
    double truncation_bound = 0.0;
};

// gp = (o1 + o2) / 2, gh = (o1 - o2) / 2 elementwise on the same grid.
GreensSeries greens_from_correlators(const TimeGrid& grid, const std::vector<cxd>& o1,
                                     const std::vector<cxd>& o2);

// G(omega) = -i Int_0^T e^{i(omega + i eta) t} [G^p(t) + conj(G^h(t))] dt.
// Trapezoidal quadrature with an endpoint-derivative correction (see the
// implementation note); eta > 0 keeps the integral convergent.
GreensSpectrum green_realfreq(const GreensSeries& series, const std::vector<double>& omega_grid,
                              double eta);

// G(i omega_n) = -i Int_0^T e^{-(eta + omega_n) t} [G^p(t) + conj(G^h(t))] dt.
// eta >= 0 is allowed because the decay is provided by omega_n itself.
GreensSpectrum green_matsubara(const GreensSeries& series, const MatsubaraGrid& grid, double eta);

// A(omega) = -Im G(omega) / pi; rejects Matsubara-axis input.
std::vector<double> spectral_density(const GreensSpectrum& spec);

// Exact excitation energies and particle/hole pole weights from a full
// eigendecomposition of the 4-qubit Hamiltonian (matrix elements of c1 and
// c1^dag between the ground state and every eigenstate). Deliberately
// independent of the solver module's code paths.
struct LehmannPoles {
    std::vector<double> excitation;       // E_m - E_0 >= 0
    std::vector<double> weight_particle;  // |<m| c1^dag |gs>|^2
    std::vector<double> weight_hole;      // |<m| c1 |gs>|^2
};
LehmannPoles lehmann_poles(const SiamParams& p);

// G(z) = sum_m [ wp_m / (z - D_m) + wh_m / (z + D_m) ] with z = omega + i eta
// on the real axis and z = i (omega_n + eta) on the Matsubara axis.
GreensSpectrum lehmann_oracle(const SiamParams& p, double eta,
                              const std::vector<double>& omega_grid);
GreensSpectrum lehmann_oracle(const SiamParams& p, double eta, const MatsubaraGrid& grid);

// Inclusive uniform grid helper for the real-frequency axis.
std::vector<double> uniform_grid(double lo, double hi, double step);

// Indices of strict interior local maxima with value >= min_height.
std::vector<int> local_maxima(const std::vector<double>& a, double min_height);

}  // namespace siam
