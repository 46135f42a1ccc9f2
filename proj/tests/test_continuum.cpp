#include <doctest.h>

#include <cmath>

#include "antisym/continuum.hpp"

using namespace antisym;
using namespace antisym::continuum;
using numerics::kPi;

namespace {
ContinuumParams cont(double v, double x20 = 1.0) {
    ContinuumParams cp;
    cp.v = v;
    cp.x20 = x20;
    return cp;
}
}  // namespace

TEST_CASE("moments match direct quadrature of the separation density") {
    struct Row {
        double v, t, d, msd;
    };
    // D t + Var(x_s)/4 and E[x_s] from scipy quadrature over R_s
    const Row rows[] = {{0.5, 1.0, 1.274727977072619, 1.2958825853142217},
                        {0.5, 5.0, 1.786358238187132, 5.701781161034233},
                        {0.0, 1.0, 1.7911862296052243, 1.447912972718155},
                        {0.0, 5.0, 3.6570845957870497, 6.9064330648142676},
                        {-0.5, 1.0, 2.455851093025, 1.61158036606665}};
    for (const auto& r : rows) {
        const auto cp = cont(r.v);
        CHECK(mean_separation_cont(r.t, cp) == doctest::Approx(r.d).epsilon(1e-10));
        CHECK(msd_cont(r.t, cp) == doctest::Approx(r.msd).epsilon(1e-10));
    }
}

TEST_CASE("separation density reference values") {
    CHECK(separation_density(0.0, 1.0, cont(0.5)) == doctest::Approx(0.6489422804014326).epsilon(1e-13));
    CHECK(separation_density(1.2, 1.0, cont(-0.5)) == doctest::Approx(0.23526512943695935).epsilon(1e-13));
    CHECK(separation_density(0.3, 0.1, cont(0.0)) == doctest::Approx(0.418164706539652).epsilon(1e-13));
    CHECK(separation_density(-0.1, 1.0, cont(0.5)) == 0.0);
}

TEST_CASE("separation density stays finite for strong drift") {
    const auto cp = cont(-40.0);
    const double r = separation_density(2.0 * 40.0 * 3.0 + 1.0, 3.0, cp);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
}

TEST_CASE("interaction integral: closed form against the defining quadrature") {
    CHECK(interaction_integral(0.7, 1.3, cont(0.4)) == doctest::Approx(0.4870604169778514).epsilon(1e-12));
    CHECK(interaction_integral(-0.5, 1.3, cont(-0.5)) == doctest::Approx(-0.16464447622925965).epsilon(1e-12));
    for (double xs : {0.05, 0.9, 3.0, -1.0})
        for (double v : {-0.5, 0.0, 0.7}) {
            const auto cp = cont(v);
            CHECK(interaction_integral_quadrature(xs, 2.0, cp) ==
                  doctest::Approx(interaction_integral(xs, 2.0, cp)).epsilon(1e-10).scale(1.0));
        }
}

TEST_CASE("closed and convolution propagators agree, including at contact") {
    for (double v : {-0.5, 0.0, 0.5}) {
        const auto cp = cont(v);
        for (auto [x1, x2] : {std::pair{0.2, 0.2}, std::pair{-1.0, 1.5}, std::pair{0.4, 0.9}}) {
            CHECK(std::abs(propagator_closed(x1, x2, 1.0, cp) - propagator_convolution(x1, x2, 1.0, cp)) < 1e-10);
        }
        CHECK(propagator_convolution(1.0, 0.5, 1.0, cp) == 0.0);
        CHECK(propagator_closed(1.0, 0.5, 1.0, cp) == 0.0);
    }
}

TEST_CASE("normalization and zero flux at contact") {
    for (double v : {-0.5, 0.0, 0.5})
        for (double t : {0.1, 1.0, 5.0}) {
            const auto cp = cont(v);
            CHECK(closed_form_mass(t, cp) == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(std::abs(zero_flux_residual(t, cp)) < 1e-8);
        }
}

TEST_CASE("tail coordinate alternatives break the convolution identity") {
    const auto cp = cont(0.5);
    const double d = propagator_closed_variant(0.0, 1.0, 1.0, cp, TailCoordinate::centroid) -
                     propagator_convolution(0.0, 1.0, 1.0, cp);
    CHECK(std::abs(d) > 1e-3);
}

TEST_CASE("unbiased closed forms agree with quadrature; printed forms do not") {
    const auto cp = cont(0.0, 2.0);
    for (double t : {0.5, 2.0}) {
        CHECK(mean_sep_v0(t, cp) == doctest::Approx(mean_separation_cont(t, cp)).epsilon(1e-10));
        CHECK(msd_v0(t, cp) == doctest::Approx(msd_cont(t, cp)).epsilon(1e-10));
        CHECK(std::abs(mean_sep_v0_printed(t, cp) - mean_separation_cont(t, cp)) > 1e-2);
        CHECK(std::abs(msd_v0_square8(t, cp) - msd_cont(t, cp)) > 1e-2);
    }
}

TEST_CASE("characteristic function: corrected kernel sign matches the Laplace inversion") {
    const auto cp = cont(0.5);
    const double k1 = 0.3, k2 = -0.7, t = 1.0;
    const cplx ref = numerics::inverse_laplace_complex([&](cplx e) { return q_laplace_fourier(k1, k2, e, cp); }, t);
    CHECK(std::abs(q_charfn_time(k1, k2, t, cp) - ref) < 1e-9);
    CHECK(std::abs(q_charfn_time_printed(k1, k2, t, cp) - ref) > 1e-2);
    CHECK(std::abs(q_charfn_time(0.0, 0.0, t, cp) - 1.0) < 1e-10);
}

TEST_CASE("Laplace-domain marginal moments invert to the time-domain moments") {
    const auto cp = cont(0.5);
    const double t = 2.0;
    const double x1 = numerics::inverse_laplace([&](cplx e) { return marginal_moments_laplace_cont(e, cp).first; }, t);
    CHECK(1.0 - 2.0 * x1 == doctest::Approx(mean_separation_cont(t, cp)).epsilon(1e-8));
}

TEST_CASE("asymptotic and short-time limits") {
    CHECK(mean_separation_cont(500.0, cont(0.5)) == doctest::Approx(2.0).epsilon(0.02));
    CHECK(msd_cont(500.0, cont(-0.5)) == doctest::Approx(1000.0).epsilon(0.02));
    const double t = 1e-3;
    CHECK(mean_separation_cont(t, cont(0.5, 3.0)) == doctest::Approx(short_time_cont(cont(0.5, 3.0), t).d).epsilon(1e-9));
}

TEST_CASE("bridge maps the lattice bias onto the drift sign") {
    CHECK(bridge(0.7, 1.0, 1.0).v > 0.0);
    CHECK(bridge(0.5, 1.0, 1.0).v == 0.0);
    CHECK(bridge(0.3, 2.0, 0.5).D == doctest::Approx(0.5));
    ContinuumParams bad;
    bad.D = -1.0;
    CHECK_THROWS(bad.validate());
}
