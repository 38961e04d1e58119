// Sampling grids shared by the correlator and Green's-function code: the
// uniform time grid the correlators are measured on and the fermionic
// Matsubara frequency grid the self-consistency cost is evaluated on.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace siam {

// Uniform time grid, inclusive of both endpoints. t_start plays the role of
// the small lower integration bound and defaults to 0 (the integrands are
// finite there).
struct TimeGrid {
    double t_start = 0.0;
    double dt = 0.02;
    double t_max = 200.0;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("time grid needs dt > 0");
        if (!(t_max > t_start)) throw std::invalid_argument("time grid needs t_max > t_start");
    }

    int n_points() const {
        validate();
        return static_cast<int>(std::floor((t_max - t_start) / dt + 0.5)) + 1;
    }

    double t(int j) const { return t_start + j * dt; }
};

// Fermionic Matsubara frequencies omega_n = (2n+1) pi / beta for
// n = 0 .. n_max-1 (n_max is a count; all frequencies strictly positive and
// increasing).
struct MatsubaraGrid {
    double beta = 50.0;
    int n_max = 200;

    void validate() const {
        if (!(beta > 0.0)) throw std::invalid_argument("Matsubara grid needs beta > 0");
        if (n_max < 1) throw std::invalid_argument("Matsubara grid needs n_max >= 1");
    }

    std::vector<double> frequencies() const {
        validate();
        std::vector<double> w(n_max);
        for (int n = 0; n < n_max; ++n) w[n] = (2.0 * n + 1.0) * M_PI / beta;
        return w;
    }
};

}  // namespace siam
