// Command-line front end. Thin by design: all work happens behind the C API,
// this file only maps flags onto config keys and reports errors.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "siamdmft.h"

namespace {

struct SubcommandState {
    CLI::App* app = nullptr;
    std::string config_file;
    std::map<std::string, std::string> values;  // key -> flag value, insertion-ordered per key
    std::vector<std::string> order;             // keys in the order flags were parsed
};

const std::vector<std::string> kKeys = {
    "U",          "sweep_U",      "V0",          "delta_V",   "max_step",  "tol_f",
    "max_iters",  "V_min",        "V_max",       "t_start",   "dt",        "t_max",
    "beta",       "n_max",        "eta_matsubara", "eta_realfreq", "omega_min", "omega_max",
    "omega_step", "dmft_beta",    "dmft_n_max",  "dmft_eta",  "mode",      "trotter_n",
    "ground_state", "asp_T",      "asp_M",       "pps_layout", "pps_r",    "output_dir"};

int fail(const char* stage, siam_status status) {
    std::fprintf(stderr, "error (%s): %s [%s]\n", stage, siam_last_error(),
                 siam_status_name(status));
    return 1;
}

int run_one(const SubcommandState& sub, const std::string& name) {
    siam_config* cfg = siam_config_create();
    if (!cfg) {
        std::fprintf(stderr, "error: out of memory\n");
        return 1;
    }
    int rc = 0;
    siam_status status = SIAM_OK;
    if (!sub.config_file.empty() &&
        (status = siam_config_load_file(cfg, sub.config_file.c_str())) != SIAM_OK) {
        rc = fail("config file", status);
    }
    if (rc == 0) {
        for (const std::string& key : sub.order) {
            status = siam_config_set(cfg, key.c_str(), sub.values.at(key).c_str());
            if (status != SIAM_OK) {
                rc = fail(("--" + key).c_str(), status);
                break;
            }
        }
    }
    if (rc == 0) {
        char summary[512];
        status = siam_run(cfg, name.c_str(), summary, sizeof(summary));
        if (status != SIAM_OK)
            rc = fail(name.c_str(), status);
        else
            std::printf("%s\n", summary);
    }
    siam_config_destroy(cfg);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-site impurity model: scattering-circuit Green's functions and "
                 "bath self-consistency"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(siam_version()));

    const std::map<std::string, std::string> descriptions = {
        {"dmft", "run the self-consistency loop at one interaction strength"},
        {"sweep", "run the loop for every value in sweep_U"},
        {"greens", "tabulate correlators and the spectral function at fixed U, V0"},
        {"asp", "record the adiabatic preparation fidelity trace"},
        {"pps", "prepare and verify a pseudo-pure initial state"},
    };

    std::map<std::string, SubcommandState> subs;
    for (const auto& [name, description] : descriptions) {
        SubcommandState& sub = subs[name];
        sub.app = app.add_subcommand(name, description);
        sub.app->add_option("--config", sub.config_file, "key=value file applied first");
        for (const std::string& key : kKeys) {
            sub.app->add_option_function<std::string>(
                "--" + key,
                [&sub, key](const std::string& value) {
                    if (!sub.values.count(key)) sub.order.push_back(key);
                    sub.values[key] = value;
                },
                "set config key " + key);
        }
        sub.app->add_option_function<std::string>(
            "--output",
            [&sub](const std::string& value) {
                if (!sub.values.count("output_dir")) sub.order.push_back("output_dir");
                sub.values["output_dir"] = value;
            },
            "alias for --output_dir");
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [name, sub] : subs)
        if (sub.app->parsed()) return run_one(sub, name);
    return 1;
}
