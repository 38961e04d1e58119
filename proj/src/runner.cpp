#include "runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include "dmft.hpp"
#include "greens.hpp"
#include "model.hpp"
#include "pps.hpp"
#include "solver.hpp"

namespace fs = std::filesystem;

namespace siam {

namespace {

FILE* open_output(const fs::path& path) {
    FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw io_error("cannot open " + path.string() + " for writing");
    return f;
}

void make_dirs(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create directory " + dir.string() + ": " + ec.message());
}

std::string short_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

EvolutionMode mode_of(const RunConfig& cfg) {
    return cfg.mode == "trotter" ? EvolutionMode::trotter : EvolutionMode::exact;
}

QuantumState make_ground(const RunConfig& cfg, const SiamParams& p) {
    if (cfg.ground_state == "asp") return asp_evolve(p, AspSchedule{cfg.asp_T, cfg.asp_M}).first;
    return ground_state_ed(build_spin_hamiltonian(p)).second;
}

void write_config_used(const RunConfig& cfg, const fs::path& dir) {
    std::vector<std::string> keys = config_keys();
    std::sort(keys.begin(), keys.end());
    FILE* f = open_output(dir / "config_used.cfg");
    for (const std::string& key : keys)
        std::fprintf(f, "%s = %s\n", key.c_str(), get_key(cfg, key).c_str());
    std::fclose(f);
}

struct GreensArtifacts {
    CorrelatorSeries correlators;
    GreensSpectrum spectrum;
    std::vector<double> density;
};

GreensArtifacts compute_greens(const RunConfig& cfg, double U, double V) {
    RunConfig local = cfg;
    local.U = U;
    SiamParams p = SiamParams::half_filling(U, V);
    QuantumState gs = make_ground(local, p);
    GreensArtifacts out;
    out.correlators = correlator_series(p, cfg.time_grid(), mode_of(cfg), cfg.trotter_n, gs);
    GreensSeries series =
        greens_from_correlators(cfg.time_grid(), out.correlators.o1, out.correlators.o2);
    out.spectrum = green_realfreq(series, cfg.omega_grid(), cfg.eta_realfreq);
    out.density = spectral_density(out.spectrum);
    return out;
}

void write_spectrum(const GreensArtifacts& art, const fs::path& path) {
    FILE* f = open_output(path);
    std::fprintf(f, "omega,re_g,im_g,a\n");
    for (size_t i = 0; i < art.spectrum.frequencies.size(); ++i)
        std::fprintf(f, "%.12g,%.12g,%.12g,%.12g\n", art.spectrum.frequencies[i],
                     art.spectrum.values[i].real(), art.spectrum.values[i].imag(),
                     art.density[i]);
    std::fclose(f);
}

struct DmftArtifacts {
    DmftTrace trace;
    SaturationEstimate sat;
};

// One full self-consistency run at interaction strength U, streaming the
// iteration log to disk as it goes.
DmftArtifacts run_dmft_at(const RunConfig& cfg, double U, const fs::path& dir) {
    make_dirs(dir);
    RunConfig local = cfg;
    local.U = U;
    DmftConfig dcfg = local.dmft_config();

    FILE* iters = open_output(dir / "iterations.csv");
    std::fprintf(iters, "k,V,f\n");
    DmftArtifacts art;
    art.trace = dmft_iterate(dcfg, [&](const DmftIteration& it) {
        std::fprintf(iters, "%d,%.12g,%.12g\n", it.k, it.V, it.f);
        std::fflush(iters);
    });
    std::fclose(iters);

    int window = std::min<int>(5, static_cast<int>(art.trace.iterations.size()));
    art.sat = saturation_estimate(art.trace, window);

    FILE* summary = open_output(dir / "final_summary.csv");
    std::fprintf(summary, "U,converged,iterations,V_final,V_mean,V_std,window\n");
    std::fprintf(summary, "%.12g,%d,%zu,%.12g,%.12g,%.12g,%d\n", U,
                 art.trace.converged ? 1 : 0, art.trace.iterations.size(), art.trace.final_V,
                 art.sat.mean_V, art.sat.std_V, art.sat.window);
    std::fclose(summary);

    GreensArtifacts greens = compute_greens(local, U, art.trace.final_V);
    write_spectrum(greens, dir / "spectrum.csv");
    write_config_used(local, dir);
    return art;
}

std::string run_dmft(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir;
    DmftArtifacts art = run_dmft_at(cfg, cfg.U, dir);
    return "dmft U=" + short_num(cfg.U) + ": " +
           (art.trace.converged ? "converged" : "hit max_iters") + " after " +
           std::to_string(art.trace.iterations.size()) + " iterations, V=" +
           short_num(art.trace.final_V) + " (tail mean " + short_num(art.sat.mean_V) +
           " +/- " + short_num(art.sat.std_V) + ")";
}

std::string run_sweep(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir;
    make_dirs(dir);
    FILE* summary = open_output(dir / "sweep_summary.csv");
    std::fprintf(summary, "U,converged,iterations,V_final,V_mean,V_std,window\n");
    std::string note = "sweep:";
    for (double U : cfg.sweep_U) {
        char sub[64];
        std::snprintf(sub, sizeof(sub), "U_%g", U);
        DmftArtifacts art = run_dmft_at(cfg, U, dir / sub);
        std::fprintf(summary, "%.12g,%d,%zu,%.12g,%.12g,%.12g,%d\n", U,
                     art.trace.converged ? 1 : 0, art.trace.iterations.size(),
                     art.trace.final_V, art.sat.mean_V, art.sat.std_V, art.sat.window);
        std::fflush(summary);
        note += " U=" + short_num(U) + "->V=" + short_num(art.trace.final_V);
    }
    std::fclose(summary);
    return note;
}

std::string run_greens(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir;
    make_dirs(dir);
    GreensArtifacts art = compute_greens(cfg, cfg.U, cfg.V0);

    TimeGrid grid = cfg.time_grid();
    FILE* f = open_output(dir / "correlators.csv");
    std::fprintf(f, "t,re_o1,im_o1,re_o2,im_o2\n");
    for (int j = 0; j < grid.n_points(); ++j)
        std::fprintf(f, "%.12g,%.12g,%.12g,%.12g,%.12g\n", grid.t(j),
                     art.correlators.o1[j].real(), art.correlators.o1[j].imag(),
                     art.correlators.o2[j].real(), art.correlators.o2[j].imag());
    std::fclose(f);

    write_spectrum(art, dir / "spectrum.csv");
    write_config_used(cfg, dir);
    return "greens U=" + short_num(cfg.U) + " V=" + short_num(cfg.V0) + ": " +
           std::to_string(grid.n_points()) + " time points, " +
           std::to_string(art.spectrum.frequencies.size()) + " frequencies";
}

std::string run_asp(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir;
    make_dirs(dir);
    SiamParams p = SiamParams::half_filling(cfg.U, cfg.V0);
    auto [state, fidelity] = asp_evolve(p, AspSchedule{cfg.asp_T, cfg.asp_M});
    (void)state;

    FILE* f = open_output(dir / "fidelity.csv");
    std::fprintf(f, "s,fidelity\n");
    for (size_t m = 0; m < fidelity.size(); ++m)
        std::fprintf(f, "%.12g,%.12g\n", static_cast<double>(m) / cfg.asp_M, fidelity[m]);
    std::fclose(f);
    write_config_used(cfg, dir);
    return "asp U=" + short_num(cfg.U) + " V=" + short_num(cfg.V0) + " T=" +
           short_num(cfg.asp_T) + " M=" + std::to_string(cfg.asp_M) +
           ": final fidelity " + short_num(fidelity.back());
}

std::string bit_label(int s, int n) {
    std::string out(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; ++q)
        if ((s >> (n - 1 - q)) & 1) out[static_cast<size_t>(q)] = '1';
    return out;
}

std::string run_pps(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir;
    make_dirs(dir);
    SpinLayout layout = SpinLayout::from_label(cfg.pps_layout, cfg.pps_r);
    DensityOperator thermal = thermal_deviation(layout);
    DensityOperator after_sp1 = sp1_deplete(thermal, layout);
    DensityOperator after_gradient = gradient_dephase(after_sp1, layout);
    DensityOperator after_sp2 = sp2_redistribute(after_gradient, layout);
    DensityOperator final_state = gradient_dephase(after_sp2, layout);
    PpsReport report = verify_pps(final_state);

    int dim = layout.dim();
    FILE* f = open_output(dir / "populations.csv");
    std::fprintf(f, "state,label,thermal,after_sp1,after_gradient,final\n");
    for (int s = 0; s < dim; ++s)
        std::fprintf(f, "%d,%s,%.12g,%.12g,%.12g,%.12g\n", s,
                     bit_label(s, layout.n_qubits()).c_str(), thermal.matrix(s, s).real(),
                     after_sp1.matrix(s, s).real(), after_gradient.matrix(s, s).real(),
                     final_state.matrix(s, s).real());
    std::fclose(f);

    // The thermal all-zeros population spreads over every other state, so the
    // ideal contrast is P0 * dim / (dim - 1).
    double p0 = thermal.matrix(0, 0).real();
    double expected_signal = p0 * dim / (dim - 1);
    FILE* r = open_output(dir / "report.txt");
    std::fprintf(r, "layout: %s\n", cfg.pps_layout.c_str());
    std::fprintf(r, "is_pps: %s\n", report.is_pps ? "yes" : "no");
    std::fprintf(r, "background: %.12g\n", report.background);
    std::fprintf(r, "signal: %.12g\n", report.signal);
    std::fprintf(r, "max_offdiag: %.12g\n", report.max_offdiag);
    std::fprintf(r, "expected_signal: %.12g\n", expected_signal);
    std::fclose(r);
    write_config_used(cfg, dir);
    return "pps " + cfg.pps_layout + ": signal " + short_num(report.signal) +
           " over background " + short_num(report.background) +
           (report.is_pps ? " (pseudo-pure)" : " (NOT pseudo-pure)");
}

}  // namespace

std::vector<std::string> subcommands() { return {"dmft", "sweep", "greens", "asp", "pps"}; }

std::string run_subcommand(const std::string& name, const RunConfig& cfg) {
    cfg.validate();
    if (name == "dmft") return run_dmft(cfg);
    if (name == "sweep") return run_sweep(cfg);
    if (name == "greens") return run_greens(cfg);
    if (name == "asp") return run_asp(cfg);
    if (name == "pps") return run_pps(cfg);
    throw std::invalid_argument("unknown subcommand '" + name + "'");
}

}  // namespace siam
