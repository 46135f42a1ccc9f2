#include "antisym/discrete.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace antisym::discrete {

using numerics::kPi;

namespace {

constexpr cplx kI{0.0, 1.0};

void require_adjacent(const PairParams& pp, const char* who) {
    pp.validate();
    if (pp.N1 != 0 || pp.N2 != 1)
        throw std::invalid_argument(std::string(who) + ": requires the adjacent start (0, 1)");
}

// Shifts phi by a multiple of 2 pi so that phi + psi lies in (-pi, pi].
double wrap_phi(double phi, double psi) {
    const double theta = phi + psi;
    const double k = std::round(theta / (2.0 * kPi));
    return phi - 2.0 * kPi * k;
}

void check_nonzero(cplx value, const char* factor) {
    if (!(std::abs(value) > 1e-300) || !std::isfinite(std::abs(value)))
        throw std::domain_error(std::string("singular denominator: ") + factor + " vanishes");
}

double sqrt_pq(double p) { return std::sqrt(p * (1.0 - p)); }

// Square root of eps^2 + 8F eps + 16F^2(1-2p)^2 with the cut between its real roots.
cplx laplace_root(cplx eps, double p, double F) {
    const double c = 8.0 * F * sqrt_pq(p);
    return numerics::sqrt_two_root(eps, -4.0 * F - c, -4.0 * F + c);
}

// R(theta, Z) = Z + 1 - sqrt((Z+1)^2 - w^2) = w e^{-u}.
cplx r_function(double theta, cplx Z, double p) {
    const double w = 2.0 * sqrt_pq(p) * std::abs(std::cos(0.5 * theta));
    const cplx z1 = Z + 1.0;
    return z1 - std::sqrt(z1 - w) * std::sqrt(z1 + w);
}

}  // namespace

RegimeLabel classify(double p) {
    if (std::abs(p - 0.5) <= 1e-12) return RegimeLabel::unbiased;
    return p > 0.5 ? RegimeLabel::toward : RegimeLabel::apart;
}

const char* to_string(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::toward: return "toward";
        case RegimeLabel::unbiased: return "unbiased";
        case RegimeLabel::apart: return "apart";
    }
    return "?";
}

cplx cos_p(double theta, double p) {
    return p * std::polar(1.0, theta) + (1.0 - p) * std::polar(1.0, -theta);
}

cplx exp_u(double theta, cplx Z, double p) {
    const double c = std::abs(std::cos(0.5 * theta));
    if (c < 1e-14) throw std::domain_error("exp_u: cos(theta/2) vanishes");
    const double w = 2.0 * sqrt_pq(p) * c;
    const cplx z1 = Z + 1.0;
    return (z1 + std::sqrt(z1 - w) * std::sqrt(z1 + w)) / w;
}

cplx gf_laplace_general(double phi, double psi, cplx eps, const PairParams& pp) {
    pp.validate();
    phi = wrap_phi(phi, psi);
    const double theta = phi + psi;
    const double F = pp.F, p = pp.p, q = 1.0 - p;
    const long dn = pp.dN();
    const cplx Z = eps / (4.0 * F);
    const cplx eu = exp_u(theta, Z, p);
    const double c = std::cos(0.5 * theta);
    const double sr = std::sqrt(p / q);
    // e^{(1 - dN) u} (p/q)^{dN/2}, kept as one power to avoid overflow
    const cplx tail = eu * std::pow(sr / eu, static_cast<double>(dn));
    const cplx phase_dn_psi = std::polar(1.0, dn * psi);

    const cplx num = phase_dn_psi * c * (eu - tail * std::polar(1.0, 0.5 * dn * (phi - psi))) +
                     tail * std::polar(1.0, psi) * std::polar(1.0, 0.5 * (dn - 1) * theta) -
                     phase_dn_psi * sr;
    const cplx kinetic = eps + 2.0 * F * (2.0 - cos_p(phi, p) - cos_p(psi, q));
    const cplx boundary = eu * c - sr;
    check_nonzero(kinetic, "eps + 2F(2 - cos_p(phi) - cos_{1-p}(psi))");
    check_nonzero(boundary, "e^u cos(theta/2) - sqrt(p/(1-p))");
    return std::polar(1.0, static_cast<double>(pp.N1) * theta) * num / (kinetic * boundary);
}

cplx gf_laplace_adjacent(double phi, double psi, cplx eps, const PairParams& pp) {
    require_adjacent(pp, "gf_laplace_adjacent");
    phi = wrap_phi(phi, psi);
    const double theta = phi + psi;
    const double F = pp.F, p = pp.p, q = 1.0 - p;
    const cplx Z = eps / (4.0 * F);
    const double c = std::abs(std::cos(0.5 * theta));
    if (c < 1e-14) throw std::domain_error("gf_laplace_adjacent: cos(theta/2) vanishes");
    const cplx R = r_function(theta, Z, p);
    const cplx kinetic = 4.0 * F * (Z + 1.0 - 0.5 * (cos_p(phi, p) + cos_p(psi, q)));
    const cplx boundary = R - 2.0 * q * c * c;
    check_nonzero(kinetic, "Z + 1 - (cos_p(phi) + cos_{1-p}(psi))/2");
    check_nonzero(boundary, "R - 2(1-p)cos^2(theta/2)");
    return std::polar(1.0, psi) * c / kinetic *
           (R * std::polar(1.0, 0.5 * (phi - psi)) - 2.0 * q * c) / boundary;
}

cplx marginal_gf_laplace(double phi, cplx eps, const PairParams& pp) {
    require_adjacent(pp, "marginal_gf_laplace");
    if (!(std::abs(phi) < kPi)) throw std::domain_error("marginal_gf_laplace: requires |phi| < pi");
    const double F = pp.F, p = pp.p, q = 1.0 - p;
    const cplx Z = eps / (4.0 * F);
    const double c = std::cos(0.5 * phi);
    const cplx R = r_function(phi, Z, p);
    const cplx kinetic = 4.0 * F * (Z + 0.5 - 0.5 * cos_p(phi, p));
    const cplx boundary = R - 2.0 * q * c * c;
    check_nonzero(kinetic, "Z + 1/2 - cos_p(phi)/2");
    check_nonzero(boundary, "R - 2(1-p)cos^2(phi/2)");
    return c / kinetic * (R * std::polar(1.0, 0.5 * phi) - 2.0 * q * c) / boundary;
}

cplx mean_position_laplace(cplx eps, const PairParams& pp) {
    require_adjacent(pp, "mean_position_laplace");
    const double F = pp.F, p = pp.p, a = pp.a;
    const cplx S = laplace_root(eps, p, F);
    return a / (4.0 * eps) * (1.0 - S / eps) + a * F * (2.0 * p - 1.0) / (eps * eps);
}

cplx second_moment_laplace(cplx eps, const PairParams& pp) {
    require_adjacent(pp, "second_moment_laplace");
    const double F = pp.F, p = pp.p, a = pp.a;
    const cplx S = laplace_root(eps, p, F);
    const double b = 1.0 - 2.0 * p;
    return a * a / (4.0 * eps) * (1.0 + 8.0 * F / eps - S / eps) +
           a * a * b / (eps * eps * eps) * (4.0 * F * F * b + F * S);
}

double mean_position_laplace(double eps, const PairParams& pp) {
    if (!(eps > 0.0)) throw std::domain_error("mean_position_laplace: eps must be positive");
    return mean_position_laplace(cplx(eps, 0.0), pp).real();
}

double second_moment_laplace(double eps, const PairParams& pp) {
    if (!(eps > 0.0)) throw std::domain_error("second_moment_laplace: eps must be positive");
    return second_moment_laplace(cplx(eps, 0.0), pp).real();
}

namespace {

// Integral over (0, tau] of w(s)/s e^{-4s} I_1(b s) in overflow-safe form.
double bessel_kernel_integral(double tau, double p, const std::function<double(double)>& weight) {
    if (tau <= 0.0) return 0.0;
    const double b = 8.0 * sqrt_pq(p);
    auto f = [&](double s) {
        if (s <= 0.0) return weight(0.0) * 0.5 * b;
        return weight(s) / s * numerics::bessel_i_scaled(1, b * s) * std::exp(-(4.0 - b) * s);
    };
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-15 * std::max(1.0, tau * tau);
    spec.rel_tol = 1e-13;
    spec.max_depth = 50;
    return numerics::adaptive_quad(f, 0.0, tau, spec).value;
}

}  // namespace

double mean_position_time(double tau, const PairParams& pp) {
    require_adjacent(pp, "mean_position_time");
    if (tau < 0.0) throw std::domain_error("mean_position_time: tau must be >= 0");
    const double p = pp.p;
    const double J = bessel_kernel_integral(tau, p, [tau](double s) { return tau - s; });
    return pp.a * ((2.0 * p - 2.0) * tau + 2.0 * sqrt_pq(p) * J);
}

double second_moment_time(double tau, const PairParams& pp) {
    require_adjacent(pp, "second_moment_time");
    if (tau < 0.0) throw std::domain_error("second_moment_time: tau must be >= 0");
    const double p = pp.p;
    const double b = 1.0 - 2.0 * p;
    const double J = bessel_kernel_integral(tau, p, [tau, b](double s) {
        const double r = tau - s;
        return r - 2.0 * b * r * r;
    });
    const double a2 = pp.a * pp.a;
    return a2 * ((2.0 - 2.0 * p) * tau + 2.0 * b * (2.0 - 2.0 * p) * tau * tau +
                 2.0 * sqrt_pq(p) * J);
}

Moments exact_moments(double tau, const PairParams& pp) {
    Moments m;
    m.x1 = mean_position_time(tau, pp);
    m.x2 = second_moment_time(tau, pp);
    m.d = pp.a - 2.0 * m.x1;
    m.msd = m.x2 - m.x1 * m.x1;
    return m;
}

BesselLaplaceValues bessel_laplace_identities(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bessel_laplace_identities: p in (0,1)");
    if (classify(p) == RegimeLabel::unbiased)
        throw std::domain_error("bessel_laplace_identities: transforms diverge at p = 1/2");
    const double s = sqrt_pq(p);
    const double g = std::abs(1.0 - 2.0 * p);
    return {(1.0 - g) / (2.0 * s), (1.0 - g) / (8.0 * s * g), s / (8.0 * g * g * g)};
}

double bessel_laplace_cutoff(double p) {
    const double rate = 4.0 - 8.0 * sqrt_pq(p);
    return std::max(200.0, 60.0 / rate);
}

double bessel_laplace_quadrature(double p, int n, double s_max) {
    if (n < -1 || n > 1) throw std::invalid_argument("bessel_laplace_quadrature: n in {-1,0,1}");
    const double b = 8.0 * sqrt_pq(p);
    auto f = [&](double s) {
        if (s <= 0.0) return n == -1 ? 0.5 * b : 0.0;
        const double kernel = numerics::bessel_i_scaled(1, b * s) * std::exp(-(4.0 - b) * s);
        return kernel * std::pow(s, n);
    };
    numerics::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-12;
    spec.max_depth = 50;
    return numerics::adaptive_quad(f, 0.0, s_max, spec).value;
}

Moments asymptotic_moments(double p, double tau, double a) {
    if (!(tau > 0.0)) throw std::domain_error("asymptotic_moments: tau must be positive");
    Moments m;
    const double a2 = a * a;
    switch (classify(p)) {
        case RegimeLabel::toward:
            m.d = p / (2.0 * p - 1.0) * a;
            m.x2 = 2.0 * a2 * (1.0 - p) * tau;
            m.msd = 2.0 * a2 * (1.0 - p) * tau;
            break;
        case RegimeLabel::unbiased:
            m.d = std::sqrt(8.0 / kPi) * a * std::sqrt(tau);
            m.x2 = 2.0 * a2 * tau;
            m.msd = 2.0 * a2 * (1.0 - 1.0 / kPi) * tau;
            break;
        case RegimeLabel::apart:
            m.d = 4.0 * a * (1.0 - 2.0 * p) * tau;
            m.x2 = 4.0 * a2 * (1.0 - 2.0 * p) * (1.0 - 2.0 * p) * tau * tau;
            m.msd = 2.0 * a2 * tau;
            break;
    }
    m.x1 = 0.5 * (a - m.d);
    return m;
}

Moments short_time_moments(double p, double tau, double a) {
    if (tau < 0.0) throw std::domain_error("short_time_moments: tau must be >= 0");
    Moments m;
    m.d = a * (1.0 + 4.0 * (1.0 - p) * tau);
    m.x2 = 2.0 * a * a * (1.0 - p) * tau;
    m.x1 = 0.5 * (a - m.d);
    m.msd = m.x2 - m.x1 * m.x1;
    return m;
}

double divergence_timescale(double p, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("divergence_timescale: threshold must be > 0");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("divergence_timescale: p in (0,1)");
    if (classify(p) == RegimeLabel::unbiased)
        throw std::domain_error("divergence_timescale: undefined at p = 1/2");
    // As tau -> 0+ the ratio tends to 2(1-p).
    if (std::abs(1.0 - 2.0 * p) > threshold) return 0.0;

    PairParams biased{p, 1.0, 1.0, 0, 1};
    PairParams fair{0.5, 1.0, 1.0, 0, 1};
    auto excess = [&](double tau) {
        const double r = exact_moments(tau, biased).msd / exact_moments(tau, fair).msd;
        return std::abs(r - 1.0) - threshold;
    };
    double lo = 1e-3;
    if (excess(lo) > 0.0) return lo;
    const double tau_max = 1e6;
    double hi = lo;
    while (true) {
        hi = lo * 1.5;
        if (hi > tau_max)
            throw std::runtime_error("divergence_timescale: no crossing below tau = 1e6");
        if (excess(hi) > 0.0) break;
        lo = hi;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? hi : lo) = mid;
    }
    return hi;
}

FredholmReport verify_fredholm(double theta, cplx eps, const PairParams& pp, bool with_quadrature) {
    pp.validate();
    if (!(eps.real() > 0.0)) throw std::domain_error("verify_fredholm: Re(eps) must be positive");
    theta = wrap_phi(theta, 0.0);
    const double F = pp.F, p = pp.p, q = 1.0 - p;
    const double dn = static_cast<double>(pp.dN());
    const double c = std::cos(0.5 * theta);
    if (c < 1e-12) throw std::domain_error("verify_fredholm: cos(theta/2) vanishes");

    const cplx eu = exp_u(theta, eps / (4.0 * F), p);
    const cplx emu = 1.0 / eu;
    const cplx sh = 0.5 * (eu - emu);
    const cplx ch = 0.5 * (eu + emu);
    const double r = p / q;
    const double sr = std::sqrt(r);
    const double isr = 1.0 / sr;
    const cplx k = 2.0 * c * sh;
    auto ph = [](double x) { return std::polar(1.0, x); };

    FredholmReport rep;
    auto& A = rep.alpha;
    A[0][0] = (1.0 / std::sqrt(p * q) - 2.0 * emu * c) / k;
    A[1][0] = ph(-0.5 * theta) * emu * (1.0 / q - 2.0 * sr * c * ch) / k;
    A[2][0] = ph(0.5 * theta) * emu * (1.0 / p - 2.0 * isr * c * ch) / k;
    A[0][1] = ph(0.5 * theta) * (emu / r - isr * c) / k;
    A[1][1] = (isr - emu * c) / k;
    A[2][1] = (1.0 / r) * ph(theta) * emu * (isr * emu - c) / k;
    A[0][2] = ph(-0.5 * theta) * (emu * r - sr * c) / k;
    A[1][2] = r * ph(-theta) * emu * (emu * sr - c) / k;
    A[2][2] = (sr - emu * c) / k;

    const cplx pre = ph(pp.N1 * theta) / (8.0 * F * q * c * sh);
    rep.beta[0] = pre * ph(0.5 * dn * theta) * std::pow(emu, dn) * std::pow(r, 0.5 * (dn - 1.0));
    rep.beta[1] = pre * ph(0.5 * (dn - 1.0) * theta) * std::pow(emu, dn + 1.0) * std::pow(r, 0.5 * dn);
    rep.beta[2] = pre * ph(0.5 * (dn + 1.0) * theta) * std::pow(emu, dn - 1.0) *
                  std::pow(r, 0.5 * (dn - 2.0));
    rep.gamma3_closed = ph(pp.N1 * theta) * ph(0.5 * (dn + 1.0) * theta) * std::pow(emu, dn) *
                        std::pow(r, 0.5 * (dn - 2.0)) /
                        (4.0 * F * (q * c - std::sqrt(p * q) * emu));

    const std::array<cplx, 3> gamma{0.0, 0.0, rep.gamma3_closed};
    double norm2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        cplx s = gamma[i] - rep.beta[i];
        for (int j = 0; j < 3; ++j) s -= A[i][j] * gamma[j];
        rep.residual[i] = s;
        norm2 += std::norm(s);
    }
    rep.residual_norm = std::sqrt(norm2);
    // printed third row: gamma_3 (1 + alpha_33) instead of (1 - alpha_33)
    rep.residual_printed_row3 = std::abs(rep.gamma3_closed * (1.0 + A[2][2]) - rep.beta[2]);

    Eigen::Matrix3cd M;
    Eigen::Vector3cd rhs;
    for (int i = 0; i < 3; ++i) {
        rhs(i) = rep.beta[i];
        for (int j = 0; j < 3; ++j) M(i, j) = (i == j ? 1.0 : 0.0) - A[i][j];
    }
    const Eigen::Vector3cd sol = M.partialPivLu().solve(rhs);
    double dist2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        rep.gamma_solved[i] = sol(i);
        dist2 += std::norm(sol(i) - gamma[i]);
    }
    rep.gamma_distance = std::sqrt(dist2);

    auto den = [&](double f) {
        return eps + 2.0 * F * (2.0 - cos_p(f, p) - cos_p(theta - f, q));
    };
    auto g = [&](double f) {
        return ph((theta - f) * dn) * ph(pp.N1 * theta) / den(f);
    };
    auto a_fn = [&](int j, double f) -> cplx {
        switch (j) {
            case 0: return 2.0 * F * (2.0 - cos_p(f, p) - cos_p(theta - f, q)) / den(f);
            case 1: return 2.0 * F * q * (2.0 * ph(f) - (1.0 + ph(theta))) / den(f);
            default: return 2.0 * F * p * (2.0 * ph(-f) - (1.0 + ph(-theta))) / den(f);
        }
    };
    auto b_fn = [&](int i, double f) -> cplx {
        const double inv = 1.0 / (2.0 * kPi);
        if (i == 0) return inv;
        return i == 1 ? inv * ph(-f) : inv * ph(f);
    };

    if (with_quadrature) {
        numerics::QuadratureSpec qs;
        qs.abs_tol = 1e-14;
        qs.rel_tol = 1e-12;
        double dev = 0.0;
        for (int i = 0; i < 3; ++i) {
            const cplx bq = numerics::adaptive_quad_complex(
                [&](double f) { return b_fn(i, f) * g(f); }, 0.0, 2.0 * kPi, qs);
            dev = std::max(dev, std::abs(bq - rep.beta[i]));
            for (int j = 0; j < 3; ++j) {
                const cplx aq = numerics::adaptive_quad_complex(
                    [&](double f) { return b_fn(i, f) * a_fn(j, f); }, 0.0, 2.0 * kPi, qs);
                dev = std::max(dev, std::abs(aq - A[i][j]));
            }
        }
        rep.coefficient_quadrature_deviation = dev;
    }

    const double phi = 0.37 * theta + 0.21;
    cplx h = g(phi);
    for (int j = 0; j < 3; ++j) h += a_fn(j, phi) * gamma[j];
    rep.reconstruction_deviation = std::abs(h - gf_laplace_general(phi, theta - phi, eps, pp));
    return rep;
}

}  // namespace antisym::discrete
