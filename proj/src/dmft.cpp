#include "dmft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siam {

double cost(const std::vector<cxd>& g, double V, const SiamParams& params,
            const MatsubaraGrid& grid) {
    std::vector<double> w = grid.frequencies();
    if (g.size() != w.size())
        throw std::invalid_argument("cost: propagator length does not match the grid");
    SiamParams probe = params;
    probe.V = V;
    std::vector<cxd> weiss = weiss_inv(grid, g, params.mu);
    std::vector<cxd> bare = bare_g0_inv(grid, probe);
    double f = 0.0;
    for (size_t n = 0; n < w.size(); ++n) f += std::norm(weiss[n] - bare[n]);
    return f;
}

double evaluate_f(double V, const DmftConfig& cfg) {
    SiamParams p = SiamParams::half_filling(cfg.U, V);
    HamiltonianSum h = build_spin_hamiltonian(p);
    QuantumState gs = (cfg.ground_state == GroundStateSource::ed)
                          ? ground_state_ed(h).second
                          : asp_evolve(p, cfg.asp).first;
    CorrelatorSeries c = correlator_series(p, cfg.time_grid, cfg.mode, cfg.trotter_n, gs);
    GreensSeries series = greens_from_correlators(cfg.time_grid, c.o1, c.o2);
    GreensSpectrum g = green_matsubara(series, cfg.grid, cfg.eta);
    return cost(g.values, V, p, cfg.grid);
}

DmftTrace dmft_iterate(const DmftConfig& cfg,
                       const std::function<void(const DmftIteration&)>& on_iteration) {
    if (!(cfg.V_min > 0.0) || !(cfg.V_max > cfg.V_min))
        throw std::invalid_argument("dmft_iterate needs 0 < V_min < V_max");
    if (cfg.V0 < cfg.V_min || cfg.V0 > cfg.V_max)
        throw std::invalid_argument("dmft_iterate: V0 outside the configured bounds");
    if (!(cfg.delta_V > 0.0)) throw std::invalid_argument("dmft_iterate needs delta_V > 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("dmft_iterate needs max_iters >= 1");

    DmftTrace trace;
    double V = cfg.V0;
    double f_prev = 0.0, g_prev = 0.0;
    bool have_prev_f = false, have_prev_g = false;
    double clamp = cfg.max_step;

    for (int k = 0; k < cfg.max_iters; ++k) {
        double f = evaluate_f(V, cfg);
        DmftIteration rec{k, V, f};
        trace.iterations.push_back(rec);
        if (on_iteration) on_iteration(rec);

        if (have_prev_f && std::abs(f - f_prev) < cfg.tol_f) {
            trace.converged = true;
            break;
        }

        double probe = std::min(V + cfg.delta_V, cfg.V_max);
        double g = (evaluate_f(probe, cfg) - f) / cfg.delta_V;
        if (have_prev_g && ((g > 0.0) != (g_prev > 0.0))) clamp *= 0.5;

        double step = std::clamp(g * cfg.delta_V, -clamp, clamp);
        V = std::clamp(V - step, cfg.V_min, cfg.V_max);

        f_prev = f;
        g_prev = g;
        have_prev_f = true;
        have_prev_g = true;
    }

    trace.final_V = trace.iterations.back().V;
    return trace;
}

SaturationEstimate saturation_estimate(const DmftTrace& trace, int window) {
    int n = static_cast<int>(trace.iterations.size());
    if (window < 1) throw std::invalid_argument("saturation_estimate needs window >= 1");
    if (window > n)
        throw std::invalid_argument("saturation_estimate: window exceeds the trace length");
    double mean = 0.0;
    for (int k = n - window; k < n; ++k) mean += trace.iterations[k].V;
    mean /= window;
    double var = 0.0;
    for (int k = n - window; k < n; ++k) {
        double d = trace.iterations[k].V - mean;
        var += d * d;
    }
    double std_v = (window > 1) ? std::sqrt(var / (window - 1)) : 0.0;
    return {mean, std_v, window};
}

std::vector<std::pair<double, double>> scan_f(const DmftConfig& cfg, double lo, double hi,
                                              double step) {
    if (!(step > 0.0) || !(hi > lo)) throw std::invalid_argument("scan_f needs step > 0, hi > lo");
    std::vector<std::pair<double, double>> out;
    int n = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        double v = lo + k * step;
        out.emplace_back(v, evaluate_f(v, cfg));
    }
    return out;
}

}  // namespace siam
