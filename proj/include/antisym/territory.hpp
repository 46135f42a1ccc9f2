#pragma once

#include <cstdint>
#include <vector>

/// Territorial random walkers on a ring: animals mark the sites they visit and
/// refuse to enter sites carrying another animal's active scent.
namespace antisym::territory {

struct TerritoryConfig {
    int n_animals = 10;
    int lattice_size = 400;
    double R = 1.0;       ///< hop rate per animal
    double T_AS = 160.0;  ///< active scent time
    double a = 1.0;
    double t_burn = 0.0;      ///< 0 selects 10 max(T_AS, 1 / (R rho^2 a^2))
    double t_measure = 0.0;   ///< minimum measurement time after burn-in; 0 selects max(100 T_AS, 5000 / (R rho^2 a^2))
    std::uint64_t min_events = 10000;
    double max_time = 1e9;    ///< hard stop on total simulated time
    double sample_interval = 0.0;  ///< 0 selects 1 / (R rho^2 a^2) / 4
    std::uint64_t seed = 1;

    double rho() const { return n_animals / (lattice_size * a); }
    double Z() const { return T_AS * R * rho() * rho() * a * a; }
    double burn() const;
    void validate() const;
};

/// T_AS that gives the requested Z for the density and rate of `cfg`.
double t_as_for(const TerritoryConfig& cfg, double Z);

struct BoundaryEvent {
    double t = 0.0;
    int border = 0;  ///< boundary id: 2 i for the right end of territory i, 2 i + 1 for the left end
    bool toward = false;
};

struct TerritoryResult {
    double Z = 0.0;
    double rho = 0.0;
    double T_AS = 0.0;
    std::vector<BoundaryEvent> log;
    /// Width of the region last marked by each animal, one entry per animal per sample.
    std::vector<double> owned_widths;
    /// Width of the active-scent interval around each animal, sampled alongside.
    std::vector<double> active_widths;
    std::uint64_t exclusivity_violations = 0;
    std::uint64_t order_violations = 0;
    std::uint64_t samples = 0;
    double t_end = 0.0;
};

TerritoryResult run_territory(const TerritoryConfig& cfg);

struct Estimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    std::uint64_t toward = 0;
    std::uint64_t total = 0;
};

/// Fraction of boundary moves directed toward the facing boundary, binomial error.
Estimate estimate_p(const std::vector<BoundaryEvent>& log);

/// e^{-pi^2 Z / 4}.
double failure_probability(double Z);

struct ExpFit {
    double c = 0.0;
    double k = 0.0;
    double residual = 0.0;  ///< RMS of log-residuals
};

/// Least squares of log y on Z for y = c e^{-k Z}.
ExpFit fit_exponential(const std::vector<double>& zs, const std::vector<double>& ys);

/// Population variance of pooled width samples.
double territory_variance(const std::vector<double>& widths);

/// Independent runs for each Z, seeds derived from (cfg.seed, index).
std::vector<TerritoryResult> territory_sweep(const TerritoryConfig& base,
                                             const std::vector<double>& zs, int threads);

}  // namespace antisym::territory
