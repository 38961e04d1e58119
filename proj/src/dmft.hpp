// The self-consistent loop: Matsubara-axis cost function, full pipeline
// evaluation f(V), finite-difference gradient descent on the bath coupling
// with step clamping, convergence detection, dense scan oracle, and
// saturation averaging of the iteration tail.

#pragma once

#include <functional>
#include <vector>

#include "greens.hpp"
#include "solver.hpp"

namespace siam {

enum class GroundStateSource { ed, asp };

struct DmftConfig {
    double U = 1.0;
    double V0 = 0.5;
    double delta_V = 0.05;  // finite-difference probe step and learning rate
    double max_step = 0.1;  // per-iteration |Delta V| clamp
    double tol_f = 1e-6;    // absolute f-change convergence threshold
    int max_iters = 100;
    double V_min = 0.01;
    double V_max = 2.0;

    // Matsubara grid the cost is summed over. The converged V depends on
    // (beta, n_max, eta); these defaults are tuned to the low-frequency
    // matching regime the loop is meant to operate in and deliberately
    // differ from the wide-grid defaults used for Green's-function plots.
    MatsubaraGrid grid{240.0, 1};
    double eta = 0.1;

    TimeGrid time_grid{};
    EvolutionMode mode = EvolutionMode::exact;
    int trotter_n = 1;
    GroundStateSource ground_state = GroundStateSource::ed;
    AspSchedule asp{};
};

// f = sum_n |weiss_inv(G)(i w_n) - bare_g0_inv(i w_n; V)|^2 on the grid; the
// bare propagator uses the V argument, not params.V.
double cost(const std::vector<cxd>& g, double V, const SiamParams& params,
            const MatsubaraGrid& grid);

// Full pipeline at one V: Hamiltonian -> ground state (ED or ASP) ->
// scattering-circuit correlators on the time grid -> Greens series ->
// Matsubara transform -> cost. Deterministic for a fixed config.
double evaluate_f(double V, const DmftConfig& cfg);

struct DmftIteration {
    int k = 0;
    double V = 0.0;
    double f = 0.0;
};

struct DmftTrace {
    std::vector<DmftIteration> iterations;
    bool converged = false;
    double final_V = 0.0;
};

// Gradient loop: g_k = (f(V_k + dV) - f(V_k)) / dV, step -g_k dV clamped to
// a per-iteration bound, V clamped to hard bounds. The clamp starts at
// max_step and halves after every gradient sign flip; far from the minimum
// the walk matches the plain clamped rule, near it the shrinking clamp turns
// the overshoot oscillation into geometric convergence (the cost curvature
// here is far too large for the unmodified fixed-step rule to settle).
// Stops when |f_k - f_{k-1}| < tol_f; hitting max_iters returns
// converged=false rather than throwing. on_iteration, when set, observes
// each record as it is produced.
DmftTrace dmft_iterate(const DmftConfig& cfg,
                       const std::function<void(const DmftIteration&)>& on_iteration = {});

struct SaturationEstimate {
    double mean_V = 0.0;
    double std_V = 0.0;  // sample standard deviation
    int window = 5;
};

SaturationEstimate saturation_estimate(const DmftTrace& trace, int window = 5);

// Dense 1-D scan of evaluate_f, the brute-force oracle for the minimizer.
std::vector<std::pair<double, double>> scan_f(const DmftConfig& cfg, double lo, double hi,
                                              double step);

}  // namespace siam
