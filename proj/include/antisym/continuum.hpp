#pragma once

#include <utility>

#include "antisym/model.hpp"
#include "antisym/numerics.hpp"

/// Continuum limit of the two-walker process: propagators, moments, asymptotics.
namespace antisym::continuum {

using numerics::cplx;

struct ContinuumParams {
    double D = 1.0;
    double v = 0.0;  ///< drift of each walker toward the other; negative means apart
    double x10 = 0.0;
    double x20 = 1.0;

    double dx0() const { return x20 - x10; }
    double xc0() const { return 0.5 * (x10 + x20); }
    void validate() const;
};

struct Rates {
    double D = 0.0;
    double v = 0.0;
};

/// D = a^2 F, v = 2 a F (2p - 1).
Rates bridge(double p, double F, double a);

/// Continuum parameters for a lattice model, with x_{i,0} = a N_i.
ContinuumParams from_pair(const PairParams& params);

/// Fourier-Laplace transform of the joint density.
cplx q_laplace_fourier(double k1, double k2, cplx eps, const ContinuumParams& cp);

/// Characteristic function at time t; the s-integral is done by quadrature.
cplx q_charfn_time(double k1, double k2, double t, const ContinuumParams& cp);

/// Same expression with the opposite sign on the i k v term of the
/// convolution exponent, as it appears in print. Kept for adjudication.
cplx q_charfn_time_printed(double k1, double k2, double t, const ContinuumParams& cp);

/// Centroid factor: Gaussian of variance D t about x_{c,0}.
double centroid_density(double xc, double t, const ContinuumParams& cp);

/// Separation factor: drift-diffusion with a zero-flux wall at x_s = 0.
double separation_density(double xs, double t, const ContinuumParams& cp);

/// Joint density in closed form; zero for x2 < x1.
double propagator_closed(double x1, double x2, double t, const ContinuumParams& cp);

/// D dR_s/dx_s + v R_s at contact, by a one-sided fourth-order difference.
double zero_flux_residual(double t, const ContinuumParams& cp);

/// Joint density as free Gaussians plus the interaction convolution;
/// zero for x2 < x1.
double propagator_convolution(double x1, double x2, double t, const ContinuumParams& cp);

/// Candidate readings for the undeclared coordinate in the tail factor e^{-v x / D}.
enum class TailCoordinate { separation, centroid, right_position };

/// Closed form with the tail factor evaluated at the chosen coordinate.
double propagator_closed_variant(double x1, double x2, double t, const ContinuumParams& cp,
                                 TailCoordinate coordinate);

/// Interaction integral in closed form (signed, valid for x_s of either sign).
double interaction_integral(double xs, double t, const ContinuumParams& cp);

/// Interaction integral by direct quadrature of its defining convolution.
double interaction_integral_quadrature(double xs, double t, const ContinuumParams& cp);

/// Mean separation and tagged-walker MSD by quadrature of the time integrals.
double mean_separation_cont(double t, const ContinuumParams& cp);
double msd_cont(double t, const ContinuumParams& cp);

/// Closed forms at v = 0.
double mean_sep_v0(double t, const ContinuumParams& cp);
double msd_v0(double t, const ContinuumParams& cp);
/// Forms as printed: linear exponent and stray pi inside erfc (mean), linear
/// first exponent (MSD).
double mean_sep_v0_printed(double t, const ContinuumParams& cp);
double msd_v0_printed(double t, const ContinuumParams& cp);
/// MSD with the first exponent read as dx0^2 / (8 D t).
double msd_v0_square8(double t, const ContinuumParams& cp);

struct ContMoments {
    double d = 0.0;
    double msd = 0.0;
};

/// Long-time limits selected by the sign of v.
ContMoments asymptotic_cont(const ContinuumParams& cp, double t);
/// d = dx0 - 2 v t, msd = 2 D t.
ContMoments short_time_cont(const ContinuumParams& cp, double t);

/// Laplace-domain first and second moments of the left walker for x_{1,0} = 0.
std::pair<cplx, cplx> marginal_moments_laplace_cont(cplx eps, const ContinuumParams& cp);

/// Total probability of the closed-form density by nested quadrature.
double closed_form_mass(double t, const ContinuumParams& cp);

}  // namespace antisym::continuum
