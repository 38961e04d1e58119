#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace siam {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("value '" + value + "' for " + key + " is not a number");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("value '" + value + "' for " + key + " is not an integer");
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

TimeGrid RunConfig::time_grid() const { return TimeGrid{t_start, dt, t_max}; }

MatsubaraGrid RunConfig::matsubara_grid() const { return MatsubaraGrid{beta, n_max}; }

std::vector<double> RunConfig::omega_grid() const {
    return uniform_grid(omega_min, omega_max, omega_step);
}

DmftConfig RunConfig::dmft_config() const {
    DmftConfig cfg;
    cfg.U = U;
    cfg.V0 = V0;
    cfg.delta_V = delta_V;
    cfg.max_step = max_step;
    cfg.tol_f = tol_f;
    cfg.max_iters = max_iters;
    cfg.V_min = V_min;
    cfg.V_max = V_max;
    cfg.grid = MatsubaraGrid{dmft_beta, dmft_n_max};
    cfg.eta = dmft_eta;
    cfg.time_grid = time_grid();
    cfg.mode = mode == "trotter" ? EvolutionMode::trotter : EvolutionMode::exact;
    cfg.trotter_n = trotter_n;
    cfg.ground_state = ground_state == "asp" ? GroundStateSource::asp : GroundStateSource::ed;
    cfg.asp = AspSchedule{asp_T, asp_M};
    return cfg;
}

void RunConfig::validate() const {
    require(dt > 0.0, "dt must be positive");
    require(t_max > t_start, "t_max must exceed t_start");
    require(omega_min < omega_max, "omega_min must be below omega_max");
    require(V_min < V_max, "V_min must be below V_max");
    require(V0 >= V_min && V0 <= V_max,
            "V0 = " + format_double(V0) + " must lie in [V_min, V_max] = [" +
                format_double(V_min) + ", " + format_double(V_max) + "]");
    for (double u : sweep_U)
        require(u >= 0.0 && u <= 8.0, "sweep_U entries must lie in [0, 8]");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    apply_config(cfg, text);
    cfg.validate();
    return cfg;
}

void apply_config(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        // A line may hold several assignments separated by commas, but commas
        // also appear inside list values like sweep_U = 0,1,2: split on commas
        // and glue segments without '=' back onto the previous assignment.
        std::vector<std::string> assignments;
        std::string segment;
        std::istringstream parts(line);
        while (std::getline(parts, segment, ',')) {
            if (segment.find('=') != std::string::npos)
                assignments.push_back(segment);
            else if (!assignments.empty())
                assignments.back() += "," + segment;
            else
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected key = value, got '" + line + "'");
        }

        for (const std::string& item : assignments) {
            size_t eq = item.find('=');
            std::string key = trim(item.substr(0, eq));
            std::string value = trim(item.substr(eq + 1));
            if (key.empty())
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": missing key before '='");
            set_key(cfg, key, value);
        }
    }
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "U") {
        double v = parse_double(key, value);
        require(v >= 0.0 && v <= 8.0, "U = " + value + " outside [0, 8]");
        cfg.U = v;
    } else if (key == "sweep_U") {
        std::vector<double> us;
        std::istringstream parts(value);
        std::string item;
        while (std::getline(parts, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            double u = parse_double(key, item);
            require(u >= 0.0 && u <= 8.0, "sweep_U entry " + item + " outside [0, 8]");
            us.push_back(u);
        }
        require(!us.empty(), "sweep_U must list at least one interaction strength");
        cfg.sweep_U = us;
    } else if (key == "V0") {
        double v = parse_double(key, value);
        require(v >= cfg.V_min && v <= cfg.V_max,
                "V0 = " + value + " outside [V_min, V_max] = [" + format_double(cfg.V_min) +
                    ", " + format_double(cfg.V_max) + "]");
        cfg.V0 = v;
    } else if (key == "delta_V") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 0.5, "delta_V = " + value + " outside (0, 0.5]");
        cfg.delta_V = v;
    } else if (key == "max_step") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 1.0, "max_step = " + value + " outside (0, 1]");
        cfg.max_step = v;
    } else if (key == "tol_f") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 0.1, "tol_f = " + value + " outside (0, 0.1]");
        cfg.tol_f = v;
    } else if (key == "max_iters") {
        int v = parse_int(key, value);
        require(v >= 1 && v <= 100000, "max_iters = " + value + " outside [1, 100000]");
        cfg.max_iters = v;
    } else if (key == "V_min") {
        double v = parse_double(key, value);
        require(v > 0.0, "V_min must be positive");
        cfg.V_min = v;
    } else if (key == "V_max") {
        double v = parse_double(key, value);
        require(v > 0.0, "V_max must be positive");
        cfg.V_max = v;
    } else if (key == "t_start") {
        cfg.t_start = parse_double(key, value);
    } else if (key == "dt") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 10.0, "dt = " + value + " outside (0, 10]");
        cfg.dt = v;
    } else if (key == "t_max") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 100000.0, "t_max = " + value + " outside (0, 100000]");
        cfg.t_max = v;
    } else if (key == "beta") {
        double v = parse_double(key, value);
        require(v > 0.0, "beta must be positive");
        cfg.beta = v;
    } else if (key == "n_max") {
        int v = parse_int(key, value);
        require(v >= 1 && v <= 100000, "n_max = " + value + " outside [1, 100000]");
        cfg.n_max = v;
    } else if (key == "eta_matsubara") {
        double v = parse_double(key, value);
        require(v >= 0.0, "eta_matsubara must be nonnegative");
        cfg.eta_matsubara = v;
    } else if (key == "eta_realfreq") {
        double v = parse_double(key, value);
        require(v > 0.0, "eta_realfreq must be positive");
        cfg.eta_realfreq = v;
    } else if (key == "omega_min") {
        cfg.omega_min = parse_double(key, value);
    } else if (key == "omega_max") {
        cfg.omega_max = parse_double(key, value);
    } else if (key == "omega_step") {
        double v = parse_double(key, value);
        require(v > 0.0, "omega_step must be positive");
        cfg.omega_step = v;
    } else if (key == "dmft_beta") {
        double v = parse_double(key, value);
        require(v > 0.0, "dmft_beta must be positive");
        cfg.dmft_beta = v;
    } else if (key == "dmft_n_max") {
        int v = parse_int(key, value);
        require(v >= 1 && v <= 100000, "dmft_n_max = " + value + " outside [1, 100000]");
        cfg.dmft_n_max = v;
    } else if (key == "dmft_eta") {
        double v = parse_double(key, value);
        require(v >= 0.0, "dmft_eta must be nonnegative");
        cfg.dmft_eta = v;
    } else if (key == "mode") {
        require(value == "exact" || value == "trotter",
                "mode must be 'exact' or 'trotter', got '" + value + "'");
        cfg.mode = value;
    } else if (key == "trotter_n") {
        int v = parse_int(key, value);
        require(v >= 1 && v <= 4096, "trotter_n = " + value + " outside [1, 4096]");
        cfg.trotter_n = v;
    } else if (key == "ground_state") {
        require(value == "ed" || value == "asp",
                "ground_state must be 'ed' or 'asp', got '" + value + "'");
        cfg.ground_state = value;
    } else if (key == "asp_T") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 1000.0, "asp_T = " + value + " outside (0, 1000]");
        cfg.asp_T = v;
    } else if (key == "asp_M") {
        int v = parse_int(key, value);
        require(v >= 1 && v <= 100000, "asp_M = " + value + " outside [1, 100000]");
        cfg.asp_M = v;
    } else if (key == "pps_layout") {
        require(!value.empty(), "pps_layout must not be empty");
        cfg.pps_layout = value;
    } else if (key == "pps_r") {
        double v = parse_double(key, value);
        require(v > 0.0 && v <= 10.0, "pps_r = " + value + " outside (0, 10]");
        cfg.pps_r = v;
    } else if (key == "output_dir") {
        require(!value.empty(), "output_dir must not be empty");
        cfg.output_dir = value;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

std::string get_key(const RunConfig& cfg, const std::string& key) {
    if (key == "U") return format_double(cfg.U);
    if (key == "sweep_U") {
        std::string out;
        for (size_t i = 0; i < cfg.sweep_U.size(); ++i) {
            if (i) out += ",";
            out += format_double(cfg.sweep_U[i]);
        }
        return out;
    }
    if (key == "V0") return format_double(cfg.V0);
    if (key == "delta_V") return format_double(cfg.delta_V);
    if (key == "max_step") return format_double(cfg.max_step);
    if (key == "tol_f") return format_double(cfg.tol_f);
    if (key == "max_iters") return std::to_string(cfg.max_iters);
    if (key == "V_min") return format_double(cfg.V_min);
    if (key == "V_max") return format_double(cfg.V_max);
    if (key == "t_start") return format_double(cfg.t_start);
    if (key == "dt") return format_double(cfg.dt);
    if (key == "t_max") return format_double(cfg.t_max);
    if (key == "beta") return format_double(cfg.beta);
    if (key == "n_max") return std::to_string(cfg.n_max);
    if (key == "eta_matsubara") return format_double(cfg.eta_matsubara);
    if (key == "eta_realfreq") return format_double(cfg.eta_realfreq);
    if (key == "omega_min") return format_double(cfg.omega_min);
    if (key == "omega_max") return format_double(cfg.omega_max);
    if (key == "omega_step") return format_double(cfg.omega_step);
    if (key == "dmft_beta") return format_double(cfg.dmft_beta);
    if (key == "dmft_n_max") return std::to_string(cfg.dmft_n_max);
    if (key == "dmft_eta") return format_double(cfg.dmft_eta);
    if (key == "mode") return cfg.mode;
    if (key == "trotter_n") return std::to_string(cfg.trotter_n);
    if (key == "ground_state") return cfg.ground_state;
    if (key == "asp_T") return format_double(cfg.asp_T);
    if (key == "asp_M") return std::to_string(cfg.asp_M);
    if (key == "pps_layout") return cfg.pps_layout;
    if (key == "pps_r") return format_double(cfg.pps_r);
    if (key == "output_dir") return cfg.output_dir;
    throw std::invalid_argument("unknown config key '" + key + "'");
}

std::vector<std::string> config_keys() {
    return {"U",           "sweep_U",       "V0",           "delta_V",      "max_step",
            "tol_f",       "max_iters",     "V_min",        "V_max",        "t_start",
            "dt",          "t_max",         "beta",         "n_max",        "eta_matsubara",
            "eta_realfreq", "omega_min",    "omega_max",    "omega_step",   "dmft_beta",
            "dmft_n_max",  "dmft_eta",      "mode",         "trotter_n",    "ground_state",
            "asp_T",       "asp_M",         "pps_layout",   "pps_r",        "output_dir"};
}

}  // namespace siam
