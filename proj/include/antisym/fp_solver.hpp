#pragma once

#include <vector>

#include "antisym/continuum.hpp"

namespace antisym::fp {

struct GridSpec {
    double x_max = 0.0;  ///< 0 selects the smallest admissible domain
    int n_cells = 2000;
    double dt = 0.0;     ///< 0 selects dt = h / 2
    double t_end = 1.0;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Smallest admissible right edge for the separation domain.
double min_domain(const continuum::ContinuumParams& cp, double t_end);

struct SeparationSolution {
    std::vector<double> x;  ///< cell centres
    std::vector<double> R;  ///< density at t
    double h = 0.0;
    double t = 0.0;
    double dt = 0.0;
    int steps = 0;
    double mass = 0.0;
    /// Largest change of total mass over a single step.
    double max_step_mass_change = 0.0;

    /// Piecewise-linear interpolation; zero for xs < 0 or beyond the domain.
    double value_at(double xs) const;
};

/// Finite-volume Crank-Nicolson solution of the separation equation with a
/// zero-flux wall at 0 and a zero value at x_max. The first two steps are
/// replaced by four implicit half steps to damp the mollified initial spike.
SeparationSolution solve_separation_density(const continuum::ContinuumParams& cp,
                                            const GridSpec& grid);

/// Analytic centroid factor times the interpolated separation density.
double compose_joint(const SeparationSolution& sol, const continuum::ContinuumParams& cp, double x1,
                     double x2);

/// Largest absolute difference from the closed-form separation density over the cell centres.
double sup_error(const SeparationSolution& sol, const continuum::ContinuumParams& cp);

}  // namespace antisym::fp
