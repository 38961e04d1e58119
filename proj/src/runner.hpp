#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"

namespace siam {

// Raised when an output file or directory cannot be created or written.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> subcommands();

// Execute one subcommand (dmft, sweep, greens, asp, pps), write its CSV and
// text artifacts under cfg.output_dir, and return a one-line summary. Output
// is deterministic: rerunning with the same config reproduces every file
// byte for byte.
std::string run_subcommand(const std::string& name, const RunConfig& cfg);

}  // namespace siam
