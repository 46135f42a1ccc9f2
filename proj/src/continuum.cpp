#include "antisym/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antisym::continuum {

using numerics::kPi;

namespace {

constexpr cplx kI{0.0, 1.0};

// erfc(z) e^{e}, without overflow when z is large and e is large.
double erfc_times_exp(double z, double e) {
    if (z > 0.0) return numerics::erfcx(z) * std::exp(e - z * z);
    return numerics::erfc(z) * std::exp(e);
}

numerics::QuadratureSpec tight() {
    numerics::QuadratureSpec s;
    s.abs_tol = 1e-15;
    s.rel_tol = 1e-12;
    s.max_depth = 50;
    return s;
}

// Integral over (0, t] of f with 1/sqrt(s) behaviour at s = 0.
double integrate_sqrt0(const std::function<double(double)>& f, double t) {
    if (t <= 0.0) return 0.0;
    return numerics::adaptive_quad_sqrt_endpoint(f, 0.0, t, tight()).value;
}

// Bracketed source term of the convolution, as a function of s.
double source(double s, const ContinuumParams& cp) {
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double w = x0 - 2.0 * v * s;
    return std::exp(-w * w / (8.0 * D * s)) / std::sqrt(kPi * s) +
           v / std::sqrt(2.0 * D) * numerics::erfc(w / std::sqrt(8.0 * D * s));
}

cplx charfn_time_impl(double k1, double k2, double t, const ContinuumParams& cp, double sign) {
    cp.validate();
    if (t < 0.0) throw std::domain_error("q_charfn_time: t must be >= 0");
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double K = k1 + k2, k = k2 - k1;
    const cplx pre = std::exp(-kI * k * v * t - 0.5 * D * (K * K + k * k) * t);
    cplx conv = 0.0;
    if (t > 0.0) {
        const cplx rate = sign * kI * k * v + 0.5 * D * k * k;
        // s = u^2 removes the 1/sqrt(s) endpoint
        auto f = [&](double u) {
            const double s = u * u;
            if (s <= 0.0) return cplx(0.0);
            return 2.0 * u * source(s, cp) * std::exp(rate * s);
        };
        conv = numerics::adaptive_quad_complex(f, 0.0, std::sqrt(t), tight());
    }
    return pre *
           (std::polar(1.0, x0 * k2) +
            std::sqrt(0.5 * D) * kI * std::polar(1.0, 0.5 * x0 * K) * k * conv) *
           std::polar(1.0, cp.x10 * K);
}

double tail_term(double zarg, double exponent_coord, const ContinuumParams& cp) {
    const double D = cp.D, v = cp.v;
    if (v == 0.0) return 0.0;
    return v / (2.0 * D) * erfc_times_exp(zarg, -v * exponent_coord / D);
}

double separation_density_with_tail(double xs, double tail_coord, double t,
                                    const ContinuumParams& cp) {
    if (xs < 0.0) return 0.0;
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double s8 = std::sqrt(8.0 * kPi * D * t);
    const double g1 = xs - x0 + 2.0 * v * t;
    const double free = std::exp(-g1 * g1 / (8.0 * D * t)) / s8;
    const double e2 = v / (2.0 * D) * (x0 - v * t - xs) - (xs + x0) * (xs + x0) / (8.0 * D * t);
    const double image = std::exp(e2) / s8;
    const double z = (xs + x0 - 2.0 * v * t) / std::sqrt(8.0 * D * t);
    return free + image + tail_term(z, tail_coord, cp);
}

}  // namespace

void ContinuumParams::validate() const {
    if (!(D > 0.0)) throw std::invalid_argument("ContinuumParams: D must be positive");
    if (!(x10 < x20)) throw std::invalid_argument("ContinuumParams: requires x10 < x20");
    if (!std::isfinite(v)) throw std::invalid_argument("ContinuumParams: v must be finite");
}

Rates bridge(double p, double F, double a) {
    return {a * a * F, 2.0 * a * F * (2.0 * p - 1.0)};
}

ContinuumParams from_pair(const PairParams& pp) {
    pp.validate();
    const Rates r = bridge(pp.p, pp.F, pp.a);
    return {r.D, r.v, pp.a * pp.N1, pp.a * pp.N2};
}

cplx q_laplace_fourier(double k1, double k2, cplx eps, const ContinuumParams& cp) {
    cp.validate();
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double K = k1 + k2, k = k2 - k1;
    const cplx den = eps + kI * k * v + 0.5 * D * (K * K + k * k);
    const cplx r = std::sqrt(eps + v * v / (2.0 * D) + 0.5 * D * K * K);
    const double B = v / std::sqrt(2.0 * D);
    const cplx shift = std::polar(1.0, cp.x10 * K);
    const cplx first = std::polar(1.0, x0 * k2) * shift / den;
    const cplx second = kI * std::sqrt(0.5 * D) * k * std::polar(1.0, 0.5 * x0 * K) * shift / den *
                        std::exp(x0 / std::sqrt(2.0 * D) * (B - r)) / (r - B);
    return first + second;
}

cplx q_charfn_time(double k1, double k2, double t, const ContinuumParams& cp) {
    return charfn_time_impl(k1, k2, t, cp, +1.0);
}

cplx q_charfn_time_printed(double k1, double k2, double t, const ContinuumParams& cp) {
    return charfn_time_impl(k1, k2, t, cp, -1.0);
}

double centroid_density(double xc, double t, const ContinuumParams& cp) {
    const double dx = xc - cp.xc0();
    return std::exp(-dx * dx / (2.0 * cp.D * t)) / std::sqrt(2.0 * kPi * cp.D * t);
}

double separation_density(double xs, double t, const ContinuumParams& cp) {
    return separation_density_with_tail(xs, xs, t, cp);
}

double zero_flux_residual(double t, const ContinuumParams& cp) {
    cp.validate();
    const double h = 1e-3 * std::sqrt(cp.D * t);
    double f[5];
    for (int k = 0; k < 5; ++k) f[k] = separation_density(k * h, t, cp);
    const double slope = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    return cp.D * slope + cp.v * f[0];
}

double propagator_closed(double x1, double x2, double t, const ContinuumParams& cp) {
    return propagator_closed_variant(x1, x2, t, cp, TailCoordinate::separation);
}

double propagator_closed_variant(double x1, double x2, double t, const ContinuumParams& cp,
                                 TailCoordinate coordinate) {
    cp.validate();
    if (!(t > 0.0)) throw std::domain_error("propagator_closed: t must be positive");
    const double xs = x2 - x1;
    if (xs < 0.0) return 0.0;
    const double xc = 0.5 * (x1 + x2);
    double coord = xs;
    if (coordinate == TailCoordinate::centroid) coord = xc;
    if (coordinate == TailCoordinate::right_position) coord = x2;
    return centroid_density(xc, t, cp) * separation_density_with_tail(xs, coord, t, cp);
}

double interaction_integral(double xs, double t, const ContinuumParams& cp) {
    cp.validate();
    if (!(t > 0.0)) throw std::domain_error("interaction_integral: t must be positive");
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double sg = xs >= 0.0 ? 1.0 : -1.0;
    const double ax = std::abs(xs);
    double first = 0.0;
    if (sg > 0.0 && v != 0.0) {
        const double z = (ax + x0 - 2.0 * v * t) / std::sqrt(8.0 * D * t);
        first = v / D * erfc_times_exp(z, -v / (2.0 * D) * (ax + xs));
    }
    const double e = v / (2.0 * D) * (x0 - xs - v * t) - (ax + x0) * (ax + x0) / (8.0 * D * t);
    return first + sg * std::exp(e) / std::sqrt(2.0 * kPi * D * t);
}

double interaction_integral_quadrature(double xs, double t, const ContinuumParams& cp) {
    cp.validate();
    if (!(t > 0.0)) throw std::domain_error("interaction_integral: t must be positive");
    const double D = cp.D, v = cp.v;
    auto kernel = [&](double u) {
        // u = t - s > 0
        const double y = xs + 2.0 * v * u;
        return y * std::exp(-y * y / (8.0 * D * u)) / (4.0 * D * std::sqrt(kPi * u * u * u));
    };
    auto integrand = [&](double s) { return kernel(t - s) * source(s, cp); };
    const double mid = 0.5 * t;
    const double h = std::sqrt(mid);
    // s = u^2 near 0 and t - s = u^2 near t
    auto left = [&](double u) {
        const double s = u * u;
        return s <= 0.0 ? 0.0 : 2.0 * u * integrand(s);
    };
    auto right = [&](double u) {
        const double w = u * u;
        return w <= 0.0 ? 0.0 : 2.0 * u * kernel(w) * source(t - w, cp);
    };
    const auto spec = tight();
    // At contact the kernel collapses onto u = 0+ with mass 1/sqrt(2D); take the limit from x_s > 0.
    const double contact = xs == 0.0 ? source(t, cp) / std::sqrt(2.0 * D) : 0.0;
    return contact + numerics::adaptive_quad(left, 0.0, h, spec).value +
           numerics::adaptive_quad(right, 0.0, h, spec).value;
}

double propagator_convolution(double x1, double x2, double t, const ContinuumParams& cp) {
    cp.validate();
    if (!(t > 0.0)) throw std::domain_error("propagator_convolution: t must be positive");
    if (x2 < x1) return 0.0;
    const double D = cp.D, v = cp.v;
    const double g1 = x1 - cp.x10 - v * t;
    const double g2 = x2 - cp.x20 + v * t;
    const double free = std::exp(-(g1 * g1 + g2 * g2) / (4.0 * D * t)) / (4.0 * kPi * D * t);
    const double c = x1 - cp.x10 + x2 - cp.x20;
    const double cen = std::exp(-c * c / (8.0 * D * t)) / std::sqrt(8.0 * kPi * D * t);
    return free + cen * interaction_integral_quadrature(x2 - x1, t, cp);
}

double mean_separation_cont(double t, const ContinuumParams& cp) {
    cp.validate();
    if (t < 0.0) throw std::domain_error("mean_separation_cont: t must be >= 0");
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    if (t == 0.0) return x0;
    auto g = [&](double s) {
        const double w = x0 - 2.0 * v * s;
        return (2.0 * v * v * s + x0 * v - 4.0 * D) / std::sqrt(8.0 * D * s) *
               std::exp(-w * w / (8.0 * D * s));
    };
    return x0 - v * t * numerics::erfc((2.0 * v * t - x0) / std::sqrt(8.0 * D * t)) -
           integrate_sqrt0(g, t) / std::sqrt(kPi);
}

double msd_cont(double t, const ContinuumParams& cp) {
    cp.validate();
    if (t < 0.0) throw std::domain_error("msd_cont: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double E = numerics::erfc((2.0 * v * t - x0) / std::sqrt(8.0 * D * t));
    auto gauss = [&](double s) {
        const double w = x0 - 2.0 * v * s;
        return std::exp(-w * w / (8.0 * D * s));
    };
    auto h2 = [&](double s) {
        return (v * v * (2.0 * t - s) * (2.0 * v * s + x0) - 8.0 * D * v * (t - s) +
                x0 * (2.0 * v * v * s + x0 * v - 4.0 * D)) /
               (4.0 * std::sqrt(2.0 * D * s)) * gauss(s);
    };
    auto h3 = [&](double s) {
        return (2.0 * v * v * s + x0 * v - 4.0 * D) / (4.0 * std::sqrt(2.0 * D * s)) * gauss(s);
    };
    const double sp = std::sqrt(kPi);
    const double bracket = 0.5 * v * t * E + integrate_sqrt0(h3, t) / sp;
    return 2.0 * D * t - x0 * v * t + 0.5 * (v * v * t * t + x0 * v * t) * E +
           integrate_sqrt0(h2, t) / sp - bracket * bracket;
}

double mean_sep_v0(double t, const ContinuumParams& cp) {
    cp.validate();
    const double D = cp.D, x0 = cp.dx0();
    if (t <= 0.0) return x0;
    const double s8 = std::sqrt(8.0 * D * t);
    return std::sqrt(8.0 * D * t / kPi) * std::exp(-x0 * x0 / (8.0 * D * t)) + x0 -
           x0 * numerics::erfc(x0 / s8);
}

double mean_sep_v0_printed(double t, const ContinuumParams& cp) {
    cp.validate();
    const double D = cp.D, x0 = cp.dx0();
    return std::sqrt(8.0 * D / kPi) * std::exp(-x0 / (8.0 * D * t)) * std::sqrt(t) + x0 -
           x0 * numerics::erfc(x0 * std::sqrt(kPi / (2.0 * D * t)));
}

namespace {

double msd_v0_with(double t, const ContinuumParams& cp, double first_exponent) {
    const double D = cp.D, x0 = cp.dx0();
    const double z = x0 / std::sqrt(8.0 * D * t);
    const double ec = numerics::erfc(z);
    return 2.0 * D * t * (1.0 - std::exp(-first_exponent) / kPi) -
           x0 * std::sqrt(2.0 * D * t / kPi) * std::exp(-x0 * x0 / (8.0 * D * t)) * numerics::erf(z) +
           0.25 * x0 * x0 * ec * (2.0 - ec);
}

}  // namespace

double msd_v0(double t, const ContinuumParams& cp) {
    cp.validate();
    if (t <= 0.0) return 0.0;
    return msd_v0_with(t, cp, cp.dx0() * cp.dx0() / (4.0 * cp.D * t));
}

double msd_v0_printed(double t, const ContinuumParams& cp) {
    cp.validate();
    return msd_v0_with(t, cp, cp.dx0() / (8.0 * cp.D * t));
}

double msd_v0_square8(double t, const ContinuumParams& cp) {
    cp.validate();
    return msd_v0_with(t, cp, cp.dx0() * cp.dx0() / (8.0 * cp.D * t));
}

ContMoments asymptotic_cont(const ContinuumParams& cp, double t) {
    cp.validate();
    if (!(t > 0.0)) throw std::domain_error("asymptotic_cont: t must be positive");
    const double D = cp.D, v = cp.v;
    if (v > 0.0) return {D / v, D * t};
    if (v < 0.0) return {-2.0 * v * t, 2.0 * D * t};
    return {std::sqrt(8.0 * D * t / kPi), 2.0 * D * (1.0 - 1.0 / kPi) * t};
}

ContMoments short_time_cont(const ContinuumParams& cp, double t) {
    cp.validate();
    if (t < 0.0) throw std::domain_error("short_time_cont: t must be >= 0");
    return {cp.dx0() - 2.0 * cp.v * t, 2.0 * cp.D * t};
}

std::pair<cplx, cplx> marginal_moments_laplace_cont(cplx eps, const ContinuumParams& cp) {
    cp.validate();
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double k = v / std::sqrt(2.0 * D);
    const cplx r = std::sqrt(eps + v * v / (2.0 * D));
    const cplx tail = std::sqrt(D) * std::exp(x0 / std::sqrt(2.0 * D) * (k - r)) /
                      (std::sqrt(2.0) * (r - k));
    const cplx mean = v / (eps * eps) - tail / eps;
    const cplx second =
        2.0 * v * v / (eps * eps * eps) + 2.0 * D / (eps * eps) - (x0 * eps + 2.0 * v) * tail / (eps * eps);
    return {mean, second};
}

double closed_form_mass(double t, const ContinuumParams& cp) {
    cp.validate();
    const double D = cp.D, v = cp.v, x0 = cp.dx0();
    const double sig_c = std::sqrt(D * t);
    const double xs_max = x0 + std::abs(2.0 * v * t) + 40.0 * std::sqrt(D * t) + 1.0;
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-11;
    auto outer = [&](double xs) {
        auto inner = [&](double xc) {
            return propagator_closed(xc - 0.5 * xs, xc + 0.5 * xs, t, cp);
        };
        return numerics::adaptive_quad(inner, cp.xc0() - 14.0 * sig_c, cp.xc0() + 14.0 * sig_c, spec)
            .value;
    };
    return numerics::adaptive_quad(outer, 0.0, xs_max, spec).value;
}

}  // namespace antisym::continuum
