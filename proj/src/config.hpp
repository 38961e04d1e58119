#pragma once

#include <string>
#include <vector>

#include "dmft.hpp"
#include "grids.hpp"

namespace siam {

// All tunable knobs for a run, parsed from key=value text or set one key at a
// time. Defaults reproduce the shipped demonstration runs.
struct RunConfig {
    double U = 1.0;
    std::vector<double> sweep_U = {0.0, 1.0, 2.0};
    double V0 = 0.5;
    double delta_V = 0.05;
    double max_step = 0.1;
    double tol_f = 1e-6;
    int max_iters = 100;
    double V_min = 0.01;
    double V_max = 2.0;

    double t_start = 0.0;
    double dt = 0.02;
    double t_max = 200.0;

    // Transform grids used when tabulating Green's functions.
    double beta = 50.0;
    int n_max = 200;
    double eta_matsubara = 0.01;
    double eta_realfreq = 0.1;
    double omega_min = -6.0;
    double omega_max = 6.0;
    double omega_step = 0.01;

    // Coarser Matsubara grid that defines the self-consistency cost. A single
    // low frequency with a wide broadening keeps the cost landscape smooth
    // enough for the fixed-step descent to settle.
    double dmft_beta = 240.0;
    int dmft_n_max = 1;
    double dmft_eta = 0.1;

    std::string mode = "exact";
    int trotter_n = 1;
    std::string ground_state = "ed";
    double asp_T = 4.0;
    int asp_M = 50;

    std::string pps_layout = "FFFHH";
    double pps_r = 0.9407;

    std::string output_dir = "out";

    TimeGrid time_grid() const;
    MatsubaraGrid matsubara_grid() const;
    std::vector<double> omega_grid() const;
    DmftConfig dmft_config() const;

    // Cross-field checks that individual set_key range checks cannot see.
    void validate() const;
};

// Parse key = value lines. '#' starts a comment, blank lines are skipped, and
// several assignments may share one line separated by commas.
RunConfig parse_config(const std::string& text);

// Same syntax, applied on top of an existing config. Throws on the first bad
// line; cfg is left partially updated in that case, so callers wanting
// atomicity should apply to a copy.
void apply_config(RunConfig& cfg, const std::string& text);

void set_key(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_key(const RunConfig& cfg, const std::string& key);
std::vector<std::string> config_keys();

}  // namespace siam
