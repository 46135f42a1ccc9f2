#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

/// Special functions and numerical kernels shared by the analytic evaluators.
namespace antisym::numerics {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Returns e^{-x} I_order(x) for order 0 or 1 and x >= 0.
///
/// Power series below the switch point, Hankel asymptotic expansion above it.
/// Throws std::invalid_argument for x < 0 or an unsupported order.
double bessel_i_scaled(int order, double x);

double erfc(double x);
double erf(double x);

/// Scaled complementary error function e^{x^2} erfc(x); finite for all
/// x where the result is representable, including x well beyond 26.
double erfcx(double x);

struct QuadratureSpec {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_depth = 40;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

/// Adaptive 15-point Gauss-Kronrod quadrature with bisection.
///
/// The integrand is never evaluated at the endpoints, so removable 0/0 forms
/// at `lo` are fine. Integrable endpoint singularities converge only slowly
/// under bisection; prefer adaptive_quad_sqrt_endpoint for 1/sqrt behaviour. Throws
/// QuadratureError (carrying the partial estimate) when the requested
/// tolerance cannot be met within `max_depth` bisection levels.
QuadratureResult adaptive_quad(const std::function<double(double)>& f, double lo, double hi,
                               const QuadratureSpec& spec = {});

/// Complex-valued integrand over a real interval; real and imaginary parts
/// are integrated separately.
cplx adaptive_quad_complex(const std::function<cplx(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// Integral over [lo, hi] of f(s) where f has a 1/sqrt(s - lo) endpoint;
/// uses s = lo + u^2 so the transformed integrand is smooth.
QuadratureResult adaptive_quad_sqrt_endpoint(const std::function<double(double)>& f, double lo,
                                             double hi, const QuadratureSpec& spec = {});

class LaplaceInversionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TalbotSpec {
    int nodes = 32;
    /// Accepted disagreement between the `nodes` and 3/4 `nodes` evaluations,
    /// measured relative to max(1, |f(t)|).
    double tol = 1e-8;
};

/// Fixed-Talbot numerical inverse Laplace transform of `transform` at time t > 0.
///
/// The transform must be analytic off the non-positive real axis. Throws
/// LaplaceInversionError when two contour resolutions disagree beyond `tol`.
double inverse_laplace(const std::function<cplx(cplx)>& transform, double t,
                       const TalbotSpec& spec = {});

/// Inversion for transforms of complex-valued f(t). The real and imaginary
/// parts are recovered separately from F(s) and conj F(conj s).
cplx inverse_laplace_complex(const std::function<cplx(cplx)>& transform, double t,
                             const TalbotSpec& spec = {});

/// Single fixed-Talbot evaluation with M nodes; no convergence check.
double talbot_fixed(const std::function<cplx(cplx)>& transform, double t, int nodes);

/// Square root of (z - r1)(z - r2) with r1 <= r2 real, analytic off the
/// segment [r1, r2] and behaving like z at infinity.
inline cplx sqrt_two_root(cplx z, double r1, double r2) {
    return std::sqrt(z - r1) * std::sqrt(z - r2);
}

}  // namespace antisym::numerics
