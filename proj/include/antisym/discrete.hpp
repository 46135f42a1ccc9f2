#pragma once

#include <array>
#include <complex>

#include "antisym/model.hpp"
#include "antisym/numerics.hpp"

/// Exact evaluators for the discrete two-walker model.
///
/// Time-domain results take dimensionless time tau = F t. Laplace-domain
/// results take the physical Laplace variable eps conjugate to t.
namespace antisym::discrete {

using numerics::cplx;

enum class RegimeLabel { toward, unbiased, apart };

RegimeLabel classify(double p);
const char* to_string(RegimeLabel r);

/// p e^{i theta} + (1 - p) e^{-i theta}.
cplx cos_p(double theta, double p);

/// e^u for the phase theta and Z = eps / 4F, principal branch.
/// Throws std::domain_error when cos(theta/2) vanishes.
cplx exp_u(double theta, cplx Z, double p);

/// Laplace-domain generating function for an arbitrary start N1 < N2.
cplx gf_laplace_general(double phi, double psi, cplx eps, const PairParams& params);

/// Simplified form for the adjacent start (0, 1).
cplx gf_laplace_adjacent(double phi, double psi, cplx eps, const PairParams& params);

/// Marginal generating function of the left walker (adjacent start), |phi| < pi.
cplx marginal_gf_laplace(double phi, cplx eps, const PairParams& params);

cplx mean_position_laplace(cplx eps, const PairParams& params);
cplx second_moment_laplace(cplx eps, const PairParams& params);
double mean_position_laplace(double eps, const PairParams& params);
double second_moment_laplace(double eps, const PairParams& params);

/// Left-walker moments at dimensionless time tau from the Bessel-kernel
/// quadrature; adjacent start only.
double mean_position_time(double tau, const PairParams& params);
double second_moment_time(double tau, const PairParams& params);

struct Moments {
    double d = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double msd = 0.0;
};

/// d = a - 2<x1>, msd = <x1^2> - <x1>^2.
Moments exact_moments(double tau, const PairParams& params);

struct BesselLaplaceValues {
    double v_m1 = 0.0;
    double v_0 = 0.0;
    double v_1 = 0.0;
};

/// Closed forms of the Laplace transforms of t^n I_1(8 sqrt(p(1-p)) t) at eps = 4,
/// n = -1, 0, 1. Throws std::domain_error at p = 1/2.
BesselLaplaceValues bessel_laplace_identities(double p);

/// Default truncation point for the defining integrals; grows with the inverse
/// decay rate 4 - 8 sqrt(p(1-p)).
double bessel_laplace_cutoff(double p);

/// Truncated quadrature of the defining integral for n in {-1, 0, 1}.
double bessel_laplace_quadrature(double p, int n, double s_max);

/// Long-time forms selected by regime.
Moments asymptotic_moments(double p, double tau, double a = 1.0);

/// Linear short-time forms; only d and x2 are filled.
Moments short_time_moments(double p, double tau, double a = 1.0);

/// Smallest tau at which |msd_p / msd_{1/2} - 1| exceeds `threshold`.
/// Returns 0 when the curves already differ by more than the threshold as tau -> 0+.
double divergence_timescale(double p, double threshold = 0.01);

struct FredholmReport {
    std::array<std::array<cplx, 3>, 3> alpha{};
    std::array<cplx, 3> beta{};
    cplx gamma3_closed{};
    /// Residuals of (I - alpha) gamma - beta with gamma = (0, 0, gamma3_closed).
    std::array<cplx, 3> residual{};
    double residual_norm = 0.0;
    /// Third-row residual with the printed (1 + alpha_33) coefficient.
    double residual_printed_row3 = 0.0;
    std::array<cplx, 3> gamma_solved{};
    double gamma_distance = 0.0;
    /// Largest deviation between closed-form and quadrature alpha, beta.
    double coefficient_quadrature_deviation = 0.0;
    /// |g + sum a_i gamma_i - gf_laplace_general| at a sample phi.
    double reconstruction_deviation = 0.0;
};

/// Evaluates the degenerate-kernel coefficients in closed form, checks them
/// against direct quadrature, and solves the 3x3 system independently.
FredholmReport verify_fredholm(double theta, cplx eps, const PairParams& params,
                               bool with_quadrature = true);

}  // namespace antisym::discrete
